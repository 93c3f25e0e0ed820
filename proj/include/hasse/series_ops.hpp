#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hasse/prime_field.hpp"
#include "hasse/trunc_series.hpp"

namespace hasse {

// Taylor operator: f(X+T) = sum_alpha delta_alpha(f, alpha) T^alpha, so
// X^beta -> prod binom(beta_i, alpha_i) X^(beta-alpha).
//
// The output keeps the input precision.  Terms of degree >= prec - |alpha|
// in the output may be incomplete because the input terms that would feed
// them were truncated; callers needing those digits must start from a
// larger precision.
template <class R>
TruncSeries<R> delta_alpha(const TruncSeries<R>& f, const MultiIndex& alpha) {
  if (alpha.size() != f.nvars()) throw MathError(ErrorKind::DimensionMismatch, "multi-index arity");
  const auto p = f.ring().characteristic();
  const auto shift = f.layout().pack(alpha);
  auto r = f.zero_like();
  std::vector<typename TruncSeries<R>::Term> out;
  for (const auto& t : f.terms()) {
    if (!f.layout().divides(shift, t.key)) continue;
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < f.nvars() && c != 0; ++i) {
      c = c * binomial_mod_p(f.layout().exponent(t.key, i), alpha[i], p) % p;
    }
    if (c == 0) continue;
    r.add_key(t.key - shift, f.ring().mul(f.ring().from_int(static_cast<std::int64_t>(c)), t.coeff));
  }
  return r;
}

// Hasse-Schmidt component Delta_i in variable j (0-based).
template <class R>
TruncSeries<R> delta_ij(const TruncSeries<R>& f, std::size_t j, std::uint32_t i) {
  if (j >= f.nvars()) throw MathError(ErrorKind::DimensionMismatch, "variable index out of range");
  if (i == 0) return f;
  return delta_alpha(f, MultiIndex::unit(f.nvars(), j, i));
}

// Ordinary partial derivative d/dX_j.
template <class R>
TruncSeries<R> partial_derivative(const TruncSeries<R>& f, std::size_t j) {
  const auto one = f.layout().unit(j, 1);
  auto r = f.zero_like();
  for (const auto& t : f.terms()) {
    const auto e = f.layout().exponent(t.key, j);
    if (e == 0) continue;
    r.add_key(t.key - one, f.ring().mul(f.ring().from_int(e), t.coeff));
  }
  return r;
}

// f(g_1, ..., g_n).  The g_j share an arity (possibly different from f's)
// and must have no constant term; the result is exact modulo the smallest
// of the precisions involved.
template <class R>
TruncSeries<R> substitute(const TruncSeries<R>& f, const std::vector<TruncSeries<R>>& g) {
  if (g.size() != f.nvars()) throw MathError(ErrorKind::DimensionMismatch, "need one substitution per variable");
  std::uint32_t prec = f.prec();
  for (const auto& gj : g) {
    if (gj.nvars() != g.front().nvars()) throw MathError(ErrorKind::DimensionMismatch, "substituted series arity");
    if (!f.ring().is_zero(gj.constant_term())) {
      throw MathError(ErrorKind::SubstitutionNotLocal, "substituted series has a constant term");
    }
    prec = std::min(prec, gj.prec());
  }
  TruncSeries<R> result(f.ring(), g.front().nvars(), prec);
  // Powers are cached per variable; exponents never exceed prec because
  // each g_j has order >= 1.
  std::vector<std::vector<TruncSeries<R>>> powers(f.nvars());
  auto power = [&](std::size_t j, std::uint32_t e) -> const TruncSeries<R>& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(result.constant_like(f.ring().one()));
    while (cache.size() <= e) cache.push_back(mul(cache.back(), g[j].truncated(prec)));
    return cache[e];
  };
  for (const auto& t : f.terms()) {
    if (t.deg >= prec) break;
    auto term = result.constant_like(t.coeff);
    for (std::size_t j = 0; j < f.nvars(); ++j) {
      const auto e = f.layout().exponent(t.key, j);
      if (e) term = mul(term, power(j, e));
    }
    result = add(result, term);
  }
  return result;
}

// Multiplicative inverse of a series with invertible constant term, by
// Newton iteration u <- u (2 - f u) with precision doubling.
template <class R>
TruncSeries<R> invert_unit(const TruncSeries<R>& f) {
  const auto c0 = f.constant_term();
  if (f.ring().is_zero(c0)) throw MathError(ErrorKind::NotAUnit, "series has zero constant term");
  auto u = f.constant_like(f.ring().inv(c0)).truncated(1);
  const auto two = f.constant_like(f.ring().from_int(2));
  std::uint32_t cur = 1;
  while (cur < f.prec()) {
    cur = std::min<std::uint32_t>(2 * cur, f.prec());
    auto ue = u.with_prec(cur);
    auto fu = mul(f.truncated(cur), ue);
    u = mul(ue, sub(two.truncated(cur), fu));
  }
  return u.with_prec(f.prec());
}

// Restriction f(0, ..., 0, X_j, 0, ..., 0), as a series in the same ring.
template <class R>
TruncSeries<R> restrict_to_axis(const TruncSeries<R>& f, std::size_t j) {
  auto r = f.zero_like();
  for (const auto& t : f.terms()) {
    if (t.key == f.layout().unit(j, f.layout().exponent(t.key, j))) r.add_key(t.key, t.coeff);
  }
  return r;
}

// Order of f(0, ..., 0, X_j, 0, ..., 0) in X_j; nullopt if it vanishes at
// this precision.
template <class R>
std::optional<std::uint32_t> axis_order(const TruncSeries<R>& f, std::size_t j) {
  std::optional<std::uint32_t> best;
  for (const auto& t : f.terms()) {
    const auto e = f.layout().exponent(t.key, j);
    if (t.key == f.layout().unit(j, e) && (!best || e < *best)) best = e;
  }
  return best;
}

// Degree of f in X_j over the stored terms (0 for the zero series).
template <class R>
std::uint32_t var_degree(const TruncSeries<R>& f, std::size_t j) {
  std::uint32_t d = 0;
  for (const auto& t : f.terms()) d = std::max(d, f.layout().exponent(t.key, j));
  return d;
}

// Exponent witnessing that f is not of the form h(X^p), if any.
template <class R>
std::optional<MultiIndex> pth_power_witness(const TruncSeries<R>& f) {
  const auto p = f.ring().characteristic();
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (f.layout().exponent(t.key, i) % p != 0) return f.layout().unpack(t.key);
    }
  }
  return std::nullopt;
}

// h with h^p = f, for f supported on exponents divisible by p.  Over F_p the
// coefficients are their own p-th roots; the result is certified below
// ceil(prec / p).
template <class R>
TruncSeries<R> pth_root(const TruncSeries<R>& f) {
  if (auto w = pth_power_witness(f)) {
    throw MathError(ErrorKind::NotAPthPower, "exponent " + w->to_string() + " is not divisible by p");
  }
  const auto p = f.ring().characteristic();
  TruncSeries<R> r(f.ring(), f.nvars(), (f.prec() + p - 1) / p, f.weights());
  for (const auto& t : f.terms()) {
    auto e = f.layout().unpack(t.key);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] /= p;
    r.add_term(e, f.ring().pth_root(t.coeff));
  }
  return r;
}

// Splits f = low + X_j^q * high where low has X_j-degree < q termwise.
template <class R>
std::pair<TruncSeries<R>, TruncSeries<R>> split_by_var_degree(const TruncSeries<R>& f, std::size_t j, std::uint32_t q) {
  auto low = f.zero_like();
  auto high = f.zero_like();
  const auto shift = f.layout().unit(j, q);
  for (const auto& t : f.terms()) {
    if (f.layout().exponent(t.key, j) < q) {
      low.add_key(t.key, t.coeff);
    } else {
      high.add_key(t.key - shift, t.coeff);
    }
  }
  return {std::move(low), std::move(high)};
}

// Multiplies by X_j^e.
template <class R>
TruncSeries<R> shift_var(const TruncSeries<R>& f, std::size_t j, std::uint32_t e) {
  auto r = f.zero_like();
  for (const auto& t : f.terms()) {
    const auto x = f.layout().exponent(t.key, j);
    if (std::uint64_t{x} + e > f.layout().max_exponent()) continue;
    if (t.deg + f.weights()[j] * e < f.prec()) r.add_key(t.key + f.layout().unit(j, e), t.coeff);
  }
  return r;
}

// Views f in k[[X_1..X_n]] as a polynomial in X_j with coefficients in the
// remaining variables (order preserved).  Entry i is the X_j^i coefficient.
template <class R>
std::vector<TruncSeries<R>> coefficients_in(const TruncSeries<R>& f, std::size_t j) {
  if (f.nvars() < 2) throw MathError(ErrorKind::DimensionMismatch, "need at least two variables");
  const auto deg = var_degree(f, j);
  std::vector<TruncSeries<R>> out;
  for (std::uint32_t i = 0; i <= deg; ++i) out.emplace_back(f.ring(), f.nvars() - 1, f.prec());
  for (const auto& t : f.terms()) {
    auto e = f.layout().unpack(t.key);
    std::vector<std::uint32_t> rest;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k != j) rest.push_back(e[k]);
    }
    out[e[j]].add_term(MultiIndex(std::move(rest)), t.coeff);
  }
  return out;
}

// Inverse of coefficients_in: sum_i c_i * X_j^i with X_j inserted at j.
template <class R>
TruncSeries<R> from_coefficients_in(const std::vector<TruncSeries<R>>& c, std::size_t j, std::size_t nvars,
                                    std::uint32_t prec, const R& ring) {
  TruncSeries<R> r(ring, nvars, prec);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (const auto& t : c[i].terms()) {
      auto e = c[i].layout().unpack(t.key).values();
      e.insert(e.begin() + static_cast<std::ptrdiff_t>(j), static_cast<std::uint32_t>(i));
      r.add_term(MultiIndex(std::move(e)), t.coeff);
    }
  }
  return r;
}

// Reorders variables: the new variable i is the old variable perm[i].
template <class R>
TruncSeries<R> permute_vars(const TruncSeries<R>& f, const std::vector<std::size_t>& perm) {
  auto r = f.zero_like();
  for (const auto& t : f.terms()) {
    const auto e = f.layout().unpack(t.key);
    MultiIndex out(f.nvars());
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = e[perm[i]];
    r.add_term(out, t.coeff);
  }
  return r;
}

}  // namespace hasse
