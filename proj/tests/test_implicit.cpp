#include <functional>
#include <random>

#include "doctest.h"
#include "hasse/implicit.hpp"
#include "hasse/parse.hpp"
#include "hasse/residue.hpp"
#include "hasse/tower_poly.hpp"
#include "support.hpp"

using namespace hasse;

namespace {

using FpSeries = TruncSeries<PrimeField>;

FpSeries S(const char* text, std::uint32_t p, std::size_t n, std::uint32_t prec) {
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

// Dense coefficient vectors mod s^N.
template <class R>
std::vector<typename R::Elem> dense_mul(const R& ring, const std::vector<typename R::Elem>& a,
                                        const std::vector<typename R::Elem>& b) {
  std::vector<typename R::Elem> c(a.size(), ring.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] = ring.add(c[i + j], ring.mul(a[i], b[j]));
  }
  return c;
}

// G(s, x(s)) expanded monomial by monomial.
template <class R>
std::vector<typename R::Elem> naive_eval(const TruncSeries<R>& G, const std::vector<typename R::Elem>& x) {
  const auto& ring = G.ring();
  const auto N = x.size();
  std::vector<typename R::Elem> out(N, ring.zero());
  for (const auto& t : G.terms()) {
    const auto i = G.layout().exponent(t.key, 0);
    const auto j = G.layout().exponent(t.key, 1);
    std::vector<typename R::Elem> pw(N, ring.zero());
    pw[0] = ring.one();
    for (std::uint32_t k = 0; k < j; ++k) pw = dense_mul(ring, pw, x);
    for (std::size_t k = 0; k + i < N; ++k) out[k + i] = ring.add(out[k + i], ring.mul(t.coeff, pw[k]));
  }
  return out;
}

// Solves for one coefficient at a time: x_k only enters the s^k
// coefficient through the linear term of G in sigma.
template <class R>
std::vector<typename R::Elem> oracle_solve(const TruncSeries<R>& G, std::uint32_t N) {
  const auto& ring = G.ring();
  const auto g1 = G.coeff(MultiIndex{0, 1});
  std::vector<typename R::Elem> x(N, ring.zero());
  for (std::uint32_t k = 1; k < N; ++k) {
    x[k] = ring.neg(ring.mul(naive_eval(G, x)[k], ring.inv(g1)));
  }
  return x;
}

template <class R>
bool matches(const TruncSeries<R>& s, const std::vector<typename R::Elem>& x, std::uint32_t upto) {
  for (std::uint32_t k = 0; k < upto; ++k) {
    if (!s.ring().equal(s.coeff(MultiIndex{k}), x[k])) return false;
  }
  return true;
}

template <class R>
bool vanishes_below(const TruncSeries<R>& s, std::uint32_t n) {
  for (const auto& t : s.terms()) {
    if (t.deg < n && !s.ring().is_zero(t.coeff)) return false;
  }
  return true;
}

// G = a*s + b*sigma + higher terms, with b nonzero.
template <class R, class Gen>
TruncSeries<R> random_admissible(const R& ring, std::uint32_t N, std::mt19937_64& rng, Gen gen) {
  TruncSeries<R> G(ring, 2, N);
  std::bernoulli_distribution keep(0.3);
  typename R::Elem b = gen();
  while (ring.is_zero(b)) b = gen();
  G.add_term(MultiIndex{0, 1}, b);
  G.add_term(MultiIndex{1, 0}, gen());
  for (std::uint32_t d = 2; d < 5; ++d) {
    for (std::uint32_t i = 0; i <= d; ++i) {
      if (keep(rng)) G.add_term(MultiIndex{i, d - i}, gen());
    }
  }
  return G;
}

}  // namespace

TEST_CASE("implicit_solve examples") {
  CHECK(implicit_solve(S("X2 - X1", 3, 2, 6), 6).equals(S("X1", 3, 1, 6)));
  const auto xi = implicit_solve(S("X2 + X2^2 - X1", 5, 2, 5), 5);
  CHECK(xi.equals(S("X1 + 4*X1^2 + 2*X1^3", 5, 1, 5)));
  CHECK(kind_of([] { implicit_solve(S("X2^2 - X1", 2, 2, 6), 6); }) == ErrorKind::DerivativeVanishes);
  CHECK(kind_of([] { implicit_solve(S("1 + X2", 2, 2, 6), 6); }) == ErrorKind::NotCentered);
  // Order one exactly when dG/ds(0, 0) is nonzero.
  CHECK(implicit_solve(S("X2 - X1^2", 3, 2, 6), 6).equals(S("X1^2", 3, 1, 6)));
}

TEST_CASE("implicit_solve over F_p against the substitution oracle") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    PrimeField fp(p);
    std::mt19937_64 rng(70 + p);
    std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
    for (int i = 0; i < 25; ++i) {
      const std::uint32_t N = 12;
      const auto G = random_admissible(fp, N, rng, [&] { return PrimeFieldElem{c(rng)}; });
      std::vector<FpSeries> steps;
      const auto xi = implicit_solve(G, N, &steps);
      const auto oracle = oracle_solve(G, N);
      CHECK(matches(xi, oracle, N));
      CHECK(vanishes_below(eval_at_sigma(G, xi, N), N));
      // Newton doubling.
      std::uint32_t digits = 2;
      for (const auto& s : steps) {
        CHECK(matches(s, oracle, std::min(digits, N)));
        digits *= 2;
      }
      // Uniqueness: more digits extend the same solution.
      const auto longer = implicit_solve(G.with_prec(2 * N), 2 * N);
      CHECK(longer.truncated(N).equals(xi));
      if (!fp.is_zero(G.coeff(MultiIndex{1, 0}))) CHECK(xi.order() == std::optional<std::uint32_t>(1));
    }
  }
}

TEST_CASE("implicit_solve over residue fields") {
  struct Case {
    std::uint32_t p;
    const char* F;
    std::uint32_t M;
  };
  for (const auto& cs : {Case{2, "t + X", 1}, Case{3, "t^2 + X*t + X", 0}, Case{5, "1 - X*t", 1}}) {
    PrimeField fp(cs.p);
    ResidueField K(residue_ctx_build(parse_tower_poly(cs.F, fp), cs.M));
    std::mt19937_64 rng(80 + cs.p);
    for (int i = 0; i < 34; ++i) {
      const std::uint32_t N = 6;
      const auto G = random_admissible(K, N, rng, [&] { return test::random_residue(K, rng); });
      const auto xi = implicit_solve(G, N);
      CHECK(vanishes_below(eval_at_sigma(G, xi, N), N));
      CHECK(matches(xi, oracle_solve(G, N), N));
    }
  }
}

TEST_CASE("reversion and composition") {
  CHECK(revert(S("X1", 2, 1, 8), 8).equals(S("X1", 2, 1, 8)));
  CHECK(revert(S("X1 + X1^2", 2, 1, 5), 5).equals(S("X1 + X1^2 + X1^4", 2, 1, 5)));
  CHECK(revert(S("3*X1", 7, 1, 6), 6).equals(S("5*X1", 7, 1, 6)));
  CHECK(kind_of([] { revert(S("X1^2", 2, 1, 6), 6); }) == ErrorKind::NotOrderOne);
  CHECK(kind_of([] { revert(S("1 + X1", 2, 1, 6), 6); }) == ErrorKind::NotOrderOne);

  const auto F = S("1 + X1 + 2*X1^3", 3, 1, 8);
  CHECK(compose_uni(F, S("X1", 3, 1, 8)).equals(F));
  CHECK(compose_uni(S("X1^2", 3, 1, 8), S("X1 + X1^2", 3, 1, 8)).equals(S("X1^2 + 2*X1^3 + X1^4", 3, 1, 8)));
  CHECK(compose_uni(S("2", 3, 1, 8), S("X1 + X1^2", 3, 1, 8)).equals(S("2", 3, 1, 8)));
  CHECK(kind_of([] { compose_uni(S("X1", 3, 1, 8), S("1 + X1", 3, 1, 8)); }) == ErrorKind::SubstitutionNotLocal);

  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField fp(p);
    std::mt19937_64 rng(90 + p);
    for (int i = 0; i < 20; ++i) {
      auto xi = test::random_series(fp, 1, 10, rng, 0.5, 2);
      xi.add_term(MultiIndex{1}, {1 + static_cast<std::uint32_t>(i) % (p - 1)});
      const auto psi = revert(xi, 10);
      const auto id = S("X1", p, 1, 10);
      CHECK(compose_uni(xi, psi).equals(id));
      CHECK(compose_uni(psi, xi).equals(id));
    }
  }
}
