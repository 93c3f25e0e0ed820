#include <functional>
#include <random>

#include "doctest.h"
#include "hasse/normalization.hpp"
#include "hasse/parse.hpp"
#include "hasse/series_ops.hpp"
#include "support.hpp"

using namespace hasse;

namespace {

Series S(const char* text, std::uint32_t p, std::size_t n, std::uint32_t prec) {
  return parse_series(text, PrimeField(p), n, prec);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MathError& e) {
    return e.kind();
  }
  FAIL("expected a MathError");
  return ErrorKind::InvalidArgument;
}

using Matrix = std::vector<std::vector<Series>>;

// Laplace expansion along the first row.
Series cofactor_det(const Matrix& m) {
  if (m.size() == 1) return m[0][0];
  auto acc = m[0][0].zero_like();
  for (std::size_t j = 0; j < m.size(); ++j) {
    Matrix minor;
    for (std::size_t i = 1; i < m.size(); ++i) {
      std::vector<Series> row;
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (k != j) row.push_back(m[i][k]);
      }
      minor.push_back(std::move(row));
    }
    const auto term = mul(m[0][j], cofactor_det(minor));
    acc = j % 2 ? sub(acc, term) : add(acc, term);
  }
  return acc;
}

// Sylvester resultant of a (degree da) and b (formal degree db), both
// given by coefficient lists in increasing degree.
Series sylvester(const std::vector<Series>& a, const std::vector<Series>& b) {
  const auto da = a.size() - 1, db = b.size() - 1, sz = da + db;
  const auto zero = a.front().zero_like();
  Matrix m(sz, std::vector<Series>(sz, zero));
  for (std::size_t r = 0; r < db; ++r) {
    for (std::size_t i = 0; i <= da; ++i) m[r][r + i] = a[da - i];
  }
  for (std::size_t r = 0; r < da; ++r) {
    for (std::size_t i = 0; i <= db; ++i) m[db + r][r + i] = b[db - i];
  }
  return cofactor_det(m);
}

void check_shift_form(const NormalizationResult& r, std::uint32_t p) {
  for (const auto& l : r.change.layers) {
    for (const auto& s : l.shifts) {
      for (const auto& t : s.terms()) {
        const auto e = s.exponents(t);
        for (auto x : e.values()) CHECK(x % p == 0);
      }
    }
  }
}

void check_witnesses(const NormalizationResult& r) {
  for (const auto& l : r.levels) {
    const auto& w = l.witness;
    const auto n = w.H.nvars();
    CHECK(n == l.active);
    CHECK(w.H.coeff(MultiIndex::unit(n, n - 1, w.q)).value == 1);
    CHECK(var_degree(w.H, n - 1) == w.q);
    for (const auto& a : w.lower) CHECK(a.ring().is_zero(a.constant_term()));
  }
}

// The first generator, moved by the first layer, is divisible by the
// first witness.  H is only known below total degree N, so the remainder
// is certified zero below N - q.
void check_round_trip(const NormalizationResult& r, const Series& f) {
  CoordChange first{r.change.nvars, {r.change.layers.front()}};
  const auto g = apply_change(first, f);
  const auto& w = r.levels.front().witness;
  const auto rem = weierstrass_divide(g, w.H, w.q).rem;
  CHECK(rem.equal_below(rem.zero_like(), g.prec() - w.q));
  CHECK(mul(w.unit, w.H).equals(g));
}

}  // namespace

TEST_CASE("series determinant matches cofactor expansion") {
  PrimeField fp(3);
  std::mt19937_64 rng(31);
  for (std::size_t sz = 1; sz <= 4; ++sz) {
    for (int i = 0; i < 10; ++i) {
      Matrix m(sz);
      for (auto& row : m) {
        for (std::size_t j = 0; j < sz; ++j) row.push_back(test::random_series(fp, 2, 6, rng, 0.3));
      }
      CHECK(series_determinant(m).equals(cofactor_det(m)));
    }
  }
}

TEST_CASE("separability check examples") {
  auto s = separability_check(S("X2^3 + X1^2", 2, 2, 12), 3);
  CHECK(s.separable);
  REQUIRE(s.resultant.has_value());
  CHECK(s.resultant->equals(S("X1^4", 2, 1, 12)));
  CHECK(s.certificate == "X1^4");

  s = separability_check(S("X2^2 + X1", 2, 2, 12), 2);
  CHECK_FALSE(s.separable);
  CHECK(s.certificate == "0");

  CHECK(separability_check(S("X2", 2, 2, 12), 1).separable);
  CHECK(separability_check(S("X1", 2, 1, 12), 1).separable);
  CHECK_FALSE(separability_check(S("X1^2", 3, 1, 12), 2).separable);
}

TEST_CASE("separability resultant agrees with the Sylvester determinant") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField fp(p);
    std::mt19937_64 rng(40 + p);
    for (std::uint32_t q = 2; q <= 4; ++q) {
      for (int i = 0; i < 8; ++i) {
        std::vector<Series> a;
        for (std::uint32_t k = 0; k < q; ++k) a.push_back(test::random_series(fp, 1, 8, rng, 0.4, 1));
        auto full = a;
        full.push_back(Series::constant(fp, 1, 8, fp.one()));
        const auto Hm = from_coefficients_in(full, 1, 2, 8, fp);
        std::vector<Series> d;
        for (std::uint32_t k = 1; k <= q; ++k) {
          d.push_back(scale(full[k], fp.from_int(k)));
        }
        const auto oracle = sylvester(full, d);
        const auto s = separability_check(Hm, q);
        REQUIRE(s.resultant.has_value());
        CHECK((s.resultant->equals(oracle) || s.resultant->equals(neg(oracle))));
        CHECK(s.separable == !oracle.is_zero());
      }
    }
  }
}

TEST_CASE("normalize_principal examples") {
  const auto cusp = S("X1^2 + X2^3", 2, 2, 12);
  auto r = normalize_principal(cusp);
  CHECK(r.e == 1);
  REQUIRE(r.levels.size() == 1);
  CHECK(r.levels[0].witness.H.equals(cusp));
  CHECK(r.levels[0].witness.q == 3);
  CHECK(r.separable);
  CHECK(r.change.layers[0].sigma == std::vector<std::uint32_t>{0});
  CHECK(r.change.layers[0].perm == std::vector<std::size_t>{0, 1});

  // Without the search the shift has to be a multiple of p and H comes out
  // as a polynomial in X2^2.
  const auto x1 = S("X1", 2, 2, 12);
  r = normalize_principal(x1);
  CHECK(r.e == 1);
  CHECK(r.levels[0].witness.H.equals(S("X2^2 + X1", 2, 2, 12)));
  CHECK_FALSE(r.separable);
  CHECK(r.change.layers[0].sigma == std::vector<std::uint32_t>{2});

  r = normalize_principal(x1, {true});
  CHECK(r.e == 1);
  CHECK(r.change.layers[0].perm == std::vector<std::size_t>{1, 0});
  CHECK(r.levels[0].witness.q == 1);
  CHECK(r.levels[0].witness.H.equals(S("X2", 2, 2, 12)));
  CHECK(r.separable);
  CHECK(r.attempts.size() > 1);

  r = normalize_principal(S("X2", 2, 2, 12));
  CHECK(r.e == 1);
  CHECK(r.levels[0].witness.H.equals(S("X2", 2, 2, 12)));
  CHECK(r.change.layers[0].perm == std::vector<std::size_t>{0, 1});

  CHECK(kind_of([] { normalize_principal(S("0", 2, 2, 8)); }) == ErrorKind::ZeroOrUnitInput);
  CHECK(kind_of([] { normalize_principal(S("1 + X1", 2, 2, 8)); }) == ErrorKind::ZeroOrUnitInput);
  // A square has no separable presentation.
  CHECK(kind_of([] { normalize_principal(S("X1^2", 2, 2, 12), {true}); }) == ErrorKind::SeparabilitySearchExhausted);
}

TEST_CASE("normalize_ideal examples") {
  auto r = normalize_ideal({S("X1^2 + X2^3", 2, 2, 12)});
  CHECK(r.e == 1);
  CHECK(r.levels[0].witness.H.equals(S("X1^2 + X2^3", 2, 2, 12)));

  r = normalize_ideal({S("X2", 2, 2, 12), S("X1", 2, 2, 12)});
  CHECK(r.e == 0);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0].witness.H.equals(S("X2", 2, 2, 12)));
  CHECK(r.levels[1].witness.H.equals(S("X1", 2, 1, 12)));
  check_witnesses(r);

  r = normalize_ideal({S("X3^2 + X1", 2, 3, 12), S("X2", 2, 3, 12)});
  CHECK(r.e == 1);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[1].witness.H.equals(S("X2^2", 2, 2, 12)));
  check_witnesses(r);
  check_shift_form(r, 2);

  // Needs shifts at the second level: X1*X2 does not involve X2 alone.
  r = normalize_ideal({S("X3 + X1*X2", 3, 3, 16), S("X3", 3, 3, 16)});
  CHECK(r.e == 1);
  check_shift_form(r, 3);
  check_witnesses(r);

  CHECK(kind_of([] { normalize_ideal({S("0", 2, 2, 8)}); }) == ErrorKind::ImproperIdeal);
  CHECK(kind_of([] { normalize_ideal({S("X1", 2, 2, 8), S("1 + X2", 2, 2, 8)}); }) == ErrorKind::ImproperIdeal);
  CHECK(kind_of([] { normalize_ideal({S("X2^2", 2, 2, 8), S("X2", 2, 2, 8)}); }) ==
        ErrorKind::ContractionInconclusive);
}

TEST_CASE("normalization invariants on random principal inputs") {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::size_t n : {2u, 3u}) {
      PrimeField fp(p);
      std::mt19937_64 rng(50 * p + n);
      for (int i = 0; i < 15; ++i) {
        auto f = test::random_series(fp, n, 5, rng, 0.2, 1);
        if (f.is_zero()) continue;
        f = f.with_prec(40);
        const auto r = normalize_principal(f);
        CHECK(r.e == n - 1);
        check_shift_form(r, p);
        check_witnesses(r);
        check_round_trip(r, f);
      }
    }
  }
}

TEST_CASE("separability search on seeded principal inputs") {
  struct Case {
    std::uint32_t p;
    std::size_t n;
    Series f;
  };
  std::vector<Case> cases{
      {2, 2, S("X1", 2, 2, 24)},
      {2, 2, S("X1^2 + X2^2 + X1*X2^2", 2, 2, 24)},
      {3, 2, S("X1^3 - X2^3 - X2^4", 3, 2, 24)},
      {2, 2, S("X1^2 + X2^3", 2, 2, 24)},
  };
  std::mt19937_64 rng(60);
  while (cases.size() < 20) {
    const std::uint32_t p = cases.size() % 2 ? 3 : 2;
    const std::size_t n = 2 + cases.size() % 3 / 2;
    PrimeField fp(p);
    // A linear term makes the hypersurface smooth, so (f) is prime.
    auto f = test::random_series(fp, n, 5, rng, 0.2, 2);
    std::uniform_int_distribution<std::size_t> var(0, n - 1);
    f.add_term(MultiIndex::unit(n, var(rng), 1), fp.one());
    cases.push_back({p, n, f.with_prec(24)});
  }
  for (const auto& c : cases) {
    const auto r = normalize_principal(c.f, {true});
    CHECK(r.separable);
    CHECK(r.levels.front().separability.certificate != "0");
    check_shift_form(r, c.p);
    check_round_trip(r, c.f);
  }
}
