#include <functional>
#include <random>

#include "doctest.h"
#include "hasse/coeffield.hpp"
#include "hasse/series_ops.hpp"
#include "support.hpp"

using namespace hasse;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MathError& e) {
    return e.kind();
  }
  FAIL("expected a MathError");
  return ErrorKind::InvalidArgument;
}

TowerPoly T(const char* text, std::uint32_t p) { return parse_tower_poly(text, PrimeField(p)); }

UniSeries poly(const char* text, std::uint32_t p) {
  auto t = parse_tower_poly(text, PrimeField(p));
  return t.coeffs.at(0);
}

TowerPoly tower_pow(const TowerPoly& a, std::uint32_t e) {
  auto r = a;
  for (std::uint32_t i = 1; i < e; ++i) r = tower_mul(r, a);
  return r;
}

KSeries s_series(const CohenIso& iso, std::vector<ResidueElem> coeffs) {
  KSeries r(iso.K, 1, iso.N);
  for (std::uint32_t i = 0; i < coeffs.size(); ++i) r.add_term(MultiIndex{i}, coeffs[i]);
  return r;
}

ResidueElem xbar(const ResidueField& K) { return K.embed(K.laurent().monomial(1, 1)); }

TowerPoly random_tower(const PrimeField& fp, std::uint32_t max_level, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> lv(0, max_level), deg(0, 3);
  TowerPoly a{lv(rng), {}, true};
  const auto d = deg(rng);
  for (std::uint32_t r = 0; r <= d; ++r) a.coeffs.push_back(test::random_series(fp, 1, 5, rng, 0.5).with_prec(kPolyPrec));
  return a;
}

bool all_pass(const std::vector<CheckResult>& v) {
  return std::all_of(v.begin(), v.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace

TEST_CASE("find_m0 examples") {
  auto spec = find_m0(T("X^2*t + 1", 2));
  CHECK(spec.m0 == 1);
  CHECK(tower_equal(spec.mu, T("X*t^(1/2) + 1", 2)));
  // Squaring back gives the input.
  CHECK(tower_equal(tower_pow(spec.mu, 2), tower_lift(T("X^2*t + 1", 2), 1)));

  spec = find_m0(T("t + X", 2));
  CHECK(spec.m0 == 0);
  CHECK(tower_equal(spec.mu, T("t + X", 2)));

  CHECK(kind_of([] { find_m0(T("X^2*t + 1", 2), {true}); }) == ErrorKind::AllCoefficientsPthPowers);
  CHECK(kind_of([] { find_m0(T("X*t + X^2", 2)); }) == ErrorKind::NoUnitCoefficient);
  CHECK(kind_of([] { find_m0(T("t + 1", 2), {false, 3}); }) == ErrorKind::AllCoefficientsPthPowers);

  // The unit coefficient is made equal to 1 before descending.
  spec = find_m0(T("X^3*t - 1", 3));
  CHECK(spec.m0 == 1);
  CHECK(tower_equal(spec.mu, T("1 - X*t^(1/3)", 3)));

  // A non-constant unit coefficient is divided out as a series.
  spec = find_m0(T("(1 + X)*t + X", 3));
  CHECK(spec.m0 == 0);
  CHECK_FALSE(spec.mu.exact);
  CHECK(spec.mu.coeffs[1].equals(poly("1", 3).with_prec(64)));

  // F = sum b_r^(p^k) t^r is (sum b_r t_k^r)^(p^k); descent recovers the b_r.
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField fp(p);
    std::mt19937_64 rng(110 + p);
    for (int i = 0; i < 10; ++i) {
      std::vector<UniSeries> b{UniSeries::constant(fp, 1, kPolyPrec, fp.one())};
      b.push_back(test::random_series(fp, 1, 4, rng, 0.5, 2).with_prec(kPolyPrec));
      b.back().add_term(MultiIndex{1}, fp.one());
      const std::uint32_t k = 1 + static_cast<std::uint32_t>(i % 2);
      TowerPoly F{0, b, true};
      for (auto& c : F.coeffs) {
        for (std::uint32_t j = 0; j < k; ++j) c = pow(c, p);
      }
      const auto s = find_m0(F);
      CHECK(s.m0 == k);
      CHECK(tower_equal(s.mu, TowerPoly{k, b, true}));
    }
  }
}

TEST_CASE("build_cohen examples") {
  auto iso = build_cohen(find_m0(T("t + X", 2)), 0, 8);
  CHECK(iso.xi.equals(s_series(iso, {iso.K.zero(), iso.K.one()})));

  iso = build_cohen(find_m0(T("X*t + 1", 2)), 0, 8);
  CHECK(iso.xi.equals(s_series(iso, {iso.K.zero(), xbar(iso.K)})));

  // mu(Xbar + xi) = theta - Xbar - xi = -xi, so xi = -s.
  iso = build_cohen(find_m0(T("t - X", 3)), 0, 8);
  CHECK(iso.xi.equals(s_series(iso, {iso.K.zero(), iso.K.from_int(-1)})));

  CHECK(kind_of([] { build_cohen(find_m0(T("X^2*t + 1", 2)), 0, 8); }) == ErrorKind::LevelExceedsContext);
}

TEST_CASE("phi_eval and hs_xi examples") {
  const auto iso = build_cohen(find_m0(T("t + X", 2)), 2, 8);
  const auto& K = iso.K;
  CHECK(check_defining_identity(iso).pass);
  for (std::uint32_t m = 0; m <= 2; ++m) {
    TowerPoly tm{m, {UniSeries(PrimeField(2), 1, kPolyPrec), UniSeries::constant(PrimeField(2), 1, kPolyPrec, {1})}, true};
    CHECK(phi_eval(iso, tm).equals(s_series(iso, {K.theta(m)})));
  }
  CHECK(kind_of([&] { phi_eval(iso, T("t^(1/8)", 2)); }) == ErrorKind::LevelExceedsContext);

  const auto phiX = phi_eval(iso, poly("X", 2));
  CHECK(phiX.equals(s_series(iso, {xbar(K), K.one()})));

  const auto c = s_series(iso, {K.theta(1)});
  for (std::uint32_t i = 1; i < 8; ++i) CHECK(hs_xi(iso, c, i).is_zero());
  CHECK(hs_xi(iso, phiX, 1).equals(s_series(iso, {K.one()})));
  CHECK_FALSE(hs_xi(iso, phiX, 1).is_zero());

  const auto xi2 = mul(iso.xi, iso.xi);
  CHECK(hs_xi(iso, xi2, 2).equals(s_series(iso, {K.one()})));
  CHECK(hs_xi(iso, xi2, 1).is_zero());

  // Inexact coefficients need X-precision at least N.
  TowerPoly rough{0, {UniSeries::variable(PrimeField(2), 1, 4, 0)}, false};
  CHECK(kind_of([&] { phi_eval(iso, rough); }) == ErrorKind::PrecisionTooLow);
}

TEST_CASE("relation (2) at N = 16") {
  struct Case {
    std::uint32_t p;
    const char* mu;
    std::uint32_t extra_levels;
  };
  for (const auto& cs : {Case{2, "t + X", 1}, Case{2, "X^2*t + 1", 1}, Case{3, "t^2 + X*t + X", 0}}) {
    PrimeField fp(cs.p);
    const auto spec = find_m0(T(cs.mu, cs.p));
    const auto iso = build_cohen(spec, spec.m0 + cs.extra_levels, 16);
    const auto twice = build_cohen(spec, spec.m0 + cs.extra_levels, 32);
    std::vector<UniSeries> inputs{poly("X", cs.p), poly("X^2", cs.p)};
    std::mt19937_64 rng(120 + cs.p);
    for (int i = 0; i < 3; ++i) inputs.push_back(test::random_series(fp, 1, 7, rng, 0.6));
    for (const auto& a : inputs) {
      const auto r = check_relation2(iso, a, 8);
      CHECK(r.size() == 7);
      CHECK(all_pass(r));
      // Both sides recomputed at doubled precision agree with the first run.
      for (std::uint32_t i = 1; i < 8; ++i) {
        const auto lhs = phi_eval(iso, delta_ij(a, 0, i));
        CHECK(phi_eval(twice, delta_ij(a, 0, i)).equal_below(lhs, 16));
        const auto rhs = hs_xi(twice, phi_eval(twice, a), i);
        CHECK(rhs.equal_below(lhs, 16 - i));
      }
    }
  }
  // Example: both sides vanish for X^2 in characteristic 2.
  const auto iso = build_cohen(find_m0(T("t + X", 2)), 0, 16);
  CHECK(phi_eval(iso, delta_ij(poly("X^2", 2), 0, 1)).is_zero());
  CHECK(hs_xi(iso, phi_eval(iso, poly("X^2", 2)), 1).is_zero());
}

TEST_CASE("homomorphism, residues and the coefficient field") {
  struct Case {
    std::uint32_t p;
    const char* mu;
  };
  for (const auto& cs : {Case{2, "X*t + 1"}, Case{3, "t - X"}, Case{5, "1 - X*t"}, Case{3, "t^2 + X*t + X"}}) {
    PrimeField fp(cs.p);
    const auto spec = find_m0(T(cs.mu, cs.p));
    const auto M = spec.m0 + (spec.d == 1 ? 1 : 0);
    const auto iso = build_cohen(spec, M, 10);
    const auto& K = iso.K;
    CHECK(check_defining_identity(iso).pass);
    CHECK(check_flatness_kernel(iso).pass);
    // The triangular entries agree with hs_xi itself.
    for (std::uint32_t k = 1; k < 4; ++k) {
      KSeries sk(K, 1, iso.N);
      sk.add_term(MultiIndex{k}, K.one());
      CHECK_FALSE(K.is_zero(hs_xi(iso, sk, k).constant_term()));
      for (std::uint32_t i = 1; i < k; ++i) CHECK(K.is_zero(hs_xi(iso, sk, i).constant_term()));
    }
    std::mt19937_64 rng(130 + cs.p);
    for (int i = 0; i < 6; ++i) {
      const auto a = random_tower(fp, M, rng);
      const auto b = random_tower(fp, M, rng);
      CHECK(check_residue_compat(iso, a).pass);
      CHECK(check_multiplicative(iso, a, b).pass);
    }
    std::vector<ResidueElem> samples{K.one(), K.theta(spec.m0), xbar(K)};
    for (int i = 0; i < 3; ++i) samples.push_back(test::random_residue(K, rng));
    CHECK(all_pass(coefficient_field_check(iso, samples)));
    // The constant Xbar is flat but phi(X) is not.
    CHECK_FALSE(hs_xi(iso, phi_eval(iso, poly("X", cs.p)), 1).is_zero());
  }
}

TEST_CASE("counterexample") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto rep = counterexample_demo(p);
    CHECK(rep.locked_error == "AllCoefficientsPthPowers");
    CHECK(rep.level0_derivative_zero);
    CHECK(rep.level0_error == "DerivativeVanishes");
    CHECK(rep.m0 == 1);
    CHECK(rep.pipeline_ok);
  }
  CHECK(counterexample_demo(2).mu_eff == "1 + X*t^(1/2^1)");
}
