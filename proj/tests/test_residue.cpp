#include <functional>
#include <random>

#include "doctest.h"
#include "hasse/residue.hpp"
#include "support.hpp"

using namespace hasse;
using test::random_laurent;
using test::random_residue;

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

// Independent product: shift both into power series and use TruncSeries.
LaurentSeries oracle_mul(const LaurentField& L, const LaurentSeries& a, const LaurentSeries& b, std::uint32_t n) {
  const auto& fp = L.base();
  UniSeries x(fp, 1, n), y(fp, 1, n);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) x.add_term(MultiIndex{static_cast<std::uint32_t>(i)}, {a.coeffs[i]});
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) y.add_term(MultiIndex{static_cast<std::uint32_t>(i)}, {b.coeffs[i]});
  auto z = L.from_series(mul(x, y), true);
  z.val += a.val + b.val;
  return z;
}

}  // namespace

TEST_CASE("Laurent arithmetic examples") {
  PrimeField f2(2);
  LaurentField L(f2, 4);
  const auto X = L.monomial(1, 1);
  const auto r = L.inv(L.add(X, L.mul(X, X)));
  CHECK(r.val == -1);
  CHECK(r.coeffs == std::vector<std::uint32_t>{1, 1, 1, 1});
  CHECK(r.abs_prec == 3);
  CHECK(L.equal(L.mul(r, L.add(X, L.mul(X, X))), L.one()));
  CHECK(L.inv(L.one()) == L.one());
  CHECK(L.mul(L.monomial(1, -1), X) == L.one());
  CHECK(parse_laurent("X^-1 + 1", L) == L.make(-1, {1, 1}, kExactPrecision));
  CHECK(parse_laurent("1/X", L) == L.monomial(1, -1));
  CHECK(kind_of([&] { L.inv(L.zero()); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([&] { L.inv(L.big_o(3)); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { LaurentField(PrimeField(2), 0); }) == ErrorKind::EmptyPrecisionWindow);
}

TEST_CASE("Laurent precision propagation") {
  LaurentField L(PrimeField(3), 8);
  const auto a = L.make(1, {1}, 3);    // X + O(X^3)
  const auto b = L.make(0, {1}, 2);    // 1 + O(X^2)
  CHECK(L.mul(a, b).abs_prec == 3);
  CHECK(L.add(a, b).abs_prec == 2);
  const auto x2 = L.monomial(1, 2);
  CHECK(L.mul(L.big_o(1), x2).abs_prec == 3);
  CHECK(L.frobenius(a).abs_prec == 9);
  CHECK(L.frobenius(a).val == 3);
  // 1/(X + O(X^3)) keeps two digits from X^-1.
  const auto ia = L.inv(a);
  CHECK(ia.val == -1);
  CHECK(ia.abs_prec == 1);
}

TEST_CASE("Laurent products agree with a power-series oracle") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    LaurentField L(PrimeField(p), 16);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 200; ++i) {
      const auto a = random_laurent(L, rng, true);
      const auto b = random_laurent(L, rng, true);
      CHECK(L.mul(a, b) == oracle_mul(L, a, b, 64));
      const auto c = random_laurent(L, rng, i % 2 == 0);
      CHECK(L.equal(L.mul(L.add(a, b), c), L.add(L.mul(a, c), L.mul(b, c))));
      CHECK(L.equal(L.mul(c, L.inv(c)), L.one()));
      CHECK(L.equal(L.frobenius(c), L.pow(c, p)));
    }
  }
}

TEST_CASE("residue context examples") {
  PrimeField f2(2);
  const auto tx = parse_tower_poly("t + X", f2);
  auto c1 = residue_ctx_build(tx, 1);
  REQUIRE(c1->degree() == 2);
  LaurentField L(f2, 64);
  CHECK(c1->fmin[0] == L.monomial(1, 1));
  CHECK(c1->fmin[1].is_zero());

  auto c0 = residue_ctx_build(tx, 0);
  REQUIRE(c0->degree() == 1);
  CHECK(c0->fmin[0] == L.monomial(1, 1));
  ResidueField K0(c0);
  CHECK(K0.theta(0) == K0.embed(L.monomial(1, 1)));  // theta_0 = X in characteristic 2

  auto cx = residue_ctx_build(parse_tower_poly("X*t + 1", f2), 0);
  CHECK(cx->fmin[0] == L.monomial(1, -1));
  ResidueField Kx(cx);
  CHECK(Kx.theta(0) == Kx.embed(L.monomial(1, -1)));
}

TEST_CASE("residue arithmetic examples") {
  PrimeField f2(2);
  LaurentField L(f2, 64);
  ResidueField K(residue_ctx_build(parse_tower_poly("t + X", f2), 1));
  const auto th = K.theta(1);
  const auto X = K.embed(L.monomial(1, 1));
  CHECK(K.mul(th, th) == X);
  CHECK(K.inv(th) == K.mul(th, K.embed(L.monomial(1, -1))));
  CHECK(K.inv(K.one()) == K.one());
  CHECK(K.frobenius(th) == X);
  CHECK(K.theta(0) == X);
  CHECK(K.to_string(K.inv(th)) == "X^-1*theta1");

  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto c = random_laurent(L, rng, true);
    CHECK(K.frobenius(K.embed(c)) == K.embed(L.mul(c, c)));
    const auto d = random_laurent(L, rng, true);
    CHECK(K.embed(L.add(c, d)) == K.add(K.embed(c), K.embed(d)));
  }
}

TEST_CASE("tower relation and generator vanishing") {
  struct Case {
    std::uint32_t p;
    const char* F;
    std::uint32_t M;
  };
  for (const auto& cs : {Case{2, "t + X", 2}, Case{3, "t - X", 2}, Case{3, "t^2 + X*t + X", 1}, Case{2, "X*t + 1", 2}}) {
    PrimeField fp(cs.p);
    const auto F = parse_tower_poly(cs.F, fp);
    ResidueField K(residue_ctx_build(F, cs.M));
    for (std::uint32_t m = 0; m <= cs.M; ++m) {
      auto x = K.theta(cs.M);
      for (std::uint32_t j = m; j < cs.M; ++j) x = K.frobenius(x);
      CHECK(x == K.theta(m));
    }
    // F(theta_{m0}) = 0.
    auto acc = K.zero();
    for (std::size_t r = 0; r < F.coeffs.size(); ++r) {
      acc = K.add(acc, K.mul(K.embed(F.coeffs[r], true), K.pow(K.theta(0), r)));
    }
    CHECK(K.is_zero(acc));
    CHECK(K.is_zero(K.reduce_tower(F)));
    CHECK(kind_of([&] { K.theta(cs.M + 1); }) == ErrorKind::LevelExceedsContext);
  }
}

TEST_CASE("residue field axioms and Euclidean inverses") {
  struct Case {
    std::uint32_t p;
    const char* F;
    std::uint32_t M;
  };
  for (const auto& cs : {Case{2, "t + X", 2}, Case{3, "t^2 + X*t + X", 1}, Case{5, "1 - X*t", 1}}) {
    PrimeField fp(cs.p);
    ResidueField K(residue_ctx_build(parse_tower_poly(cs.F, fp), cs.M));
    std::mt19937_64 rng(cs.p * 31 + cs.M);
    for (int i = 0; i < 200; ++i) {
      const auto a = random_residue(K, rng);
      if (K.is_zero(a)) continue;
      const auto ia = K.inv(a);
      CHECK(K.equal(K.mul(a, ia), K.one()));
      if (i % 4 == 0) {
        const auto b = random_residue(K, rng);
        const auto c = random_residue(K, rng);
        CHECK(K.equal(K.mul(K.mul(a, b), c), K.mul(a, K.mul(b, c))));
        CHECK(K.equal(K.mul(a, K.add(b, c)), K.add(K.mul(a, b), K.mul(a, c))));
        CHECK(K.equal(K.frobenius(K.add(a, b)), K.add(K.frobenius(a), K.frobenius(b))));
        CHECK(K.equal(K.frobenius(a), K.pow(a, cs.p)));
      }
    }
  }
}

TEST_CASE("generator validation and reducibility screen") {
  PrimeField f2(2), f5(5), f3(3);
  CHECK(kind_of([&] { residue_ctx_build(parse_tower_poly("X^2*t + 1", f2), 0); }) == ErrorKind::InvalidGenerator);
  CHECK(kind_of([&] { residue_ctx_build(parse_tower_poly("X*t + X", f2), 0); }) == ErrorKind::InvalidGenerator);
  CHECK(kind_of([&] { residue_ctx_build(parse_tower_poly("1 + X", f2), 0); }) == ErrorKind::InvalidGenerator);
  CHECK(kind_of([&] { residue_ctx_build(parse_tower_poly("t^(1/2) + X", f2), 0); }) == ErrorKind::InvalidGenerator);
  // Two Newton slopes.
  CHECK(kind_of([&] { residue_ctx_build(parse_tower_poly("X*t^2 + t + X", f3), 0); }) == ErrorKind::InvalidGenerator);
  // (t + X)(t + 2X) has the root -X.
  const auto split = parse_tower_poly("t^2 + 3*X*t + 2*X^2 + 1 - 1", f5);
  CHECK_FALSE(reducibility_witness({LaurentField(f5, 8).make(2, {2}, kExactPrecision),
                                     LaurentField(f5, 8).make(1, {3}, kExactPrecision),
                                     LaurentField(f5, 8).one()},
                                    LaurentField(f5, 8)) == std::nullopt);
  ResidueOptions trust;
  trust.validate_generator = false;
  trust.assume_irreducible = true;
  ResidueField K(residue_ctx_build(split, 0, trust));
  const auto zd = K.add(K.theta(0), K.embed(LaurentField(f5, 8).monomial(1, 1)));
  CHECK(kind_of([&] { K.inv(zd); }) == ErrorKind::DivisionByZero);

  // Degree two with an approximate root: Euclid loses the window.
  ResidueField K3(residue_ctx_build(parse_tower_poly("t^2 - 1 - X", f3), 0, trust));
  LaurentField L3(f3, 16);
  const auto approx = L3.make(0, {1, 2}, 2);  // sqrt(1 + X) + O(X^2)
  const auto a = K3.sub(K3.theta(0), K3.embed(approx));
  CHECK(kind_of([&] { K3.inv(a); }) == ErrorKind::PrecisionExhausted);
  const auto exact_root = K3.sub(K3.mul(K3.theta(0), K3.theta(0)), K3.embed(L3.make(0, {1, 1}, kExactPrecision)));
  CHECK(kind_of([&] { K3.inv(exact_root); }) == ErrorKind::DivisionByZero);
}
