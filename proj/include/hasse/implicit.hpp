#pragma once

#include <cstdint>
#include <vector>

#include "hasse/error.hpp"
#include "hasse/series_ops.hpp"
#include "hasse/trunc_series.hpp"

namespace hasse {

// Bivariate series use variable 0 for s and variable 1 for sigma.

// G(s, xi(s)) for univariate xi of positive order, mod s^prec.
template <class R>
TruncSeries<R> eval_at_sigma(const TruncSeries<R>& G, const TruncSeries<R>& xi, std::uint32_t prec) {
  if (G.nvars() != 2 || xi.nvars() != 1) throw MathError(ErrorKind::DimensionMismatch, "expected G(s, sigma) and xi(s)");
  const auto coeffs = coefficients_in(G, 1);
  const auto x = xi.truncated(prec).with_prec(prec);
  // Horner in sigma; each coefficient is a series in s alone.
  TruncSeries<R> acc(G.ring(), 1, prec);
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    acc = add(mul(acc, x), coeffs[j].truncated(prec).with_prec(prec));
  }
  return acc;
}

// The unique xi with xi(0) = 0 and G(s, xi(s)) = 0 mod s^N, by Newton
// iteration with doubling precision.  When `iterates` is given, the
// iterate after each step is appended.
template <class R>
TruncSeries<R> implicit_solve(const TruncSeries<R>& G, std::uint32_t N,
                              std::vector<TruncSeries<R>>* iterates = nullptr) {
  if (G.nvars() != 2) throw MathError(ErrorKind::DimensionMismatch, "G must be bivariate");
  if (N == 0) throw MathError(ErrorKind::InvalidArgument, "precision must be positive");
  if (G.prec() < N) throw MathError(ErrorKind::PrecisionTooLow, "G is known only below degree " + std::to_string(G.prec()));
  const auto& ring = G.ring();
  if (!ring.is_zero(G.constant_term())) throw MathError(ErrorKind::NotCentered, "G(0, 0) is not zero");
  const auto dG = partial_derivative(G, 1);
  if (ring.is_zero(dG.constant_term())) throw MathError(ErrorKind::DerivativeVanishes, "dG/dsigma(0, 0) is zero");

  TruncSeries<R> xi(ring, 1, 1);
  std::uint32_t cur = 1;
  while (cur < N) {
    cur = std::min<std::uint32_t>(2 * cur, N);
    const auto x = xi.with_prec(cur);
    const auto r = eval_at_sigma(G, x, cur);
    const auto d = eval_at_sigma(dG, x, cur);
    xi = sub(x, mul(r, invert_unit(d)));
    if (iterates) iterates->push_back(xi);
  }
  return xi.with_prec(N);
}

template <class R>
TruncSeries<R> compose_uni(const TruncSeries<R>& F, const TruncSeries<R>& g) {
  if (F.nvars() != 1 || g.nvars() != 1) throw MathError(ErrorKind::DimensionMismatch, "expected univariate series");
  return substitute(F, std::vector<TruncSeries<R>>{g});
}

// psi with xi(psi(y)) = y, from G(y, sigma) = xi(sigma) - y.
template <class R>
TruncSeries<R> revert(const TruncSeries<R>& xi, std::uint32_t N) {
  if (xi.nvars() != 1) throw MathError(ErrorKind::DimensionMismatch, "expected a univariate series");
  const auto& ring = xi.ring();
  if (!ring.is_zero(xi.constant_term()) || ring.is_zero(xi.coeff(MultiIndex{1}))) {
    throw MathError(ErrorKind::NotOrderOne, "series does not have order exactly 1");
  }
  N = std::min(N, xi.prec());
  TruncSeries<R> G(ring, 2, N);
  for (const auto& t : xi.terms()) G.add_term(MultiIndex{0, xi.layout().exponent(t.key, 0)}, t.coeff);
  G.add_term(MultiIndex{1, 0}, ring.neg(ring.one()));
  return implicit_solve(G, N);
}

}  // namespace hasse
