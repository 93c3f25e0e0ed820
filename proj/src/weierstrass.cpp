#include "hasse/weierstrass.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "hasse/error.hpp"
#include "hasse/series_ops.hpp"

namespace hasse {

std::vector<MultiIndex> newton_min_set(const Series& f) {
  if (f.is_zero()) throw MathError(ErrorKind::ZeroOrUnitInput, "zero series has no Newton diagram");
  if (!f.ring().is_zero(f.constant_term())) throw MathError(ErrorKind::ZeroOrUnitInput, "series is a unit");
  // Terms come in graded order, so a dominating exponent is always seen
  // after everything below it.
  std::vector<MultiIndex> out;
  for (const auto& t : f.terms()) {
    const auto a = f.exponents(t);
    if (std::none_of(out.begin(), out.end(), [&](const MultiIndex& b) { return b.leq(a); })) out.push_back(a);
  }
  return out;
}

std::uint64_t linear_form(const std::vector<std::uint32_t>& sigma, const MultiIndex& a) {
  std::uint64_t v = a[a.size() - 1];
  for (std::size_t j = 0; j < sigma.size(); ++j) v += std::uint64_t{sigma[j]} * a[j];
  return v;
}

namespace {

bool injective_on(const std::vector<std::uint32_t>& sigma, const std::vector<MultiIndex>& F) {
  std::set<std::uint64_t> seen;
  for (const auto& a : F) {
    if (!seen.insert(linear_form(sigma, a)).second) return false;
  }
  return true;
}

}  // namespace

// The loops stop once an entry exceeds everything the later entries can
// produce on F; past that point the values behave like digits in a mixed
// radix and L_sigma is injective, so the search always succeeds.
SigmaChoice select_sigma(const std::vector<MultiIndex>& F, std::size_t n, std::uint32_t p, bool p_multiples) {
  if (F.empty()) throw MathError(ErrorKind::InvalidArgument, "empty Newton set");
  SigmaChoice out{std::vector<std::uint32_t>(n - 1, 0), p_multiples};
  if (n == 1) return out;
  const std::uint32_t step = p_multiples ? p : 1;
  auto& sigma = out.sigma;
  auto tail_max = [&](std::size_t j) {
    std::uint64_t best = 0;
    for (const auto& a : F) {
      std::uint64_t v = a[n - 1];
      for (std::size_t i = j + 1; i + 1 < n; ++i) v += std::uint64_t{sigma[i]} * a[i];
      best = std::max(best, v);
    }
    return best;
  };
  std::function<bool(std::size_t)> fill = [&](std::size_t j) -> bool {
    const std::uint64_t unit = j + 2 == n ? step : sigma[j + 1];
    const auto bound = tail_max(j) / unit + 1;
    for (std::uint64_t m = 1; m <= bound; ++m) {
      if (unit * m > (std::uint64_t{1} << 30)) throw MathError(ErrorKind::InvalidArgument, "sigma search overflow");
      sigma[j] = static_cast<std::uint32_t>(unit * m);
      if (j == 0 ? injective_on(sigma, F) : fill(j - 1)) return true;
    }
    return false;
  };
  if (!fill(n - 2)) throw MathError(ErrorKind::InvalidArgument, "sigma search failed");
  return out;
}

Distinguished distinguish(const Series& f, const DistinguishOptions& opts) {
  const auto n = f.nvars();
  Distinguished out{f, {std::vector<std::uint32_t>(n - 1, 0), opts.p_multiples}, newton_min_set(f), 0};
  const auto axis = axis_order(f, n - 1);
  if (n == 1 || (axis && !opts.always_shift)) {
    if (!axis) throw MathError(ErrorKind::PrecisionTooLow, "series vanishes at this precision");
    out.order = *axis;
    return out;
  }
  out.sigma = select_sigma(out.newton, n, f.ring().characteristic(), opts.p_multiples);
  std::uint64_t min_l = ~std::uint64_t{0};
  for (const auto& a : out.newton) min_l = std::min(min_l, linear_form(out.sigma.sigma, a));
  if (min_l >= f.prec()) {
    throw MathError(ErrorKind::PrecisionTooLow, "order " + std::to_string(min_l) + " is not certified below precision " +
                                                    std::to_string(f.prec()));
  }
  std::vector<Series> g;
  for (std::size_t j = 0; j < n; ++j) {
    auto gj = Series::variable(f.ring(), n, f.prec(), j);
    if (j + 1 < n && out.sigma.sigma[j] > 0) {
      gj.add_term(MultiIndex::unit(n, n - 1, out.sigma.sigma[j]), f.ring().one());
    }
    g.push_back(std::move(gj));
  }
  out.g = substitute(f, g);
  const auto ord = axis_order(out.g, n - 1);
  if (!ord) throw MathError(ErrorKind::PrecisionTooLow, "shifted series vanishes on the X_n axis at this precision");
  out.order = *ord;
  return out;
}

// Division runs in the grading where X_n has weight 1 and the other
// variables weight q + 1.  There the lowest form of g is the monomial
// lc * X_n^q and every other term of g has larger weight, so the splitting
// f = (X_n-degree < q part) + X_n^q * (tail) can be carried out term by
// term in increasing weighted degree: a term divisible by X_n^q moves to
// the quotient and its multiple of g is subtracted, which only touches
// higher degrees.  The weighted precision V covers every monomial of total
// degree below N, and every quotient term that can reach one.
WeierstrassDivision weierstrass_divide(const Series& f, const Series& g, std::uint32_t q) {
  const auto n = g.nvars();
  if (f.nvars() != n) throw MathError(ErrorKind::DimensionMismatch, "dividend and divisor arity differ");
  const auto axis = axis_order(g, n - 1);
  if (!axis) throw MathError(ErrorKind::NotDistinguished, "divisor vanishes on the X_n axis");
  if (q != 0 && q != *axis) {
    throw MathError(ErrorKind::NotDistinguished,
                    "divisor has X_n-order " + std::to_string(*axis) + ", expected " + std::to_string(q));
  }
  q = *axis;
  const auto& ring = g.ring();
  const auto& layout = g.layout();
  const auto N = std::min(f.prec(), g.prec());
  const std::uint32_t c = n >= 2 ? q + 1 : 1;
  const std::uint32_t V = c * (N - 1) + 1 + q;
  auto wdeg = [&](std::uint64_t key) {
    std::uint32_t d = layout.exponent(key, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d += c * layout.exponent(key, i);
    return d;
  };

  const auto xq = layout.unit(n - 1, q);
  PrimeFieldElem lc{0};
  struct GTerm {
    std::uint64_t key;
    std::uint32_t deg;
    PrimeFieldElem coeff;
  };
  std::vector<GTerm> tail;
  for (const auto& t : g.terms()) {
    if (t.deg >= N) continue;
    if (t.key == xq) {
      lc = t.coeff;
    } else {
      tail.push_back({t.key, wdeg(t.key), t.coeff});
    }
  }
  const auto lc_inv = ring.inv(lc);

  using Acc = std::unordered_map<std::uint64_t, PrimeFieldElem>;
  std::vector<Acc> bucket(V);
  for (const auto& t : f.terms()) {
    if (t.deg >= N) continue;
    const auto d = wdeg(t.key);
    if (d < V) bucket[d][t.key] = t.coeff;
  }
  Acc quot, rem;
  for (std::uint32_t d = 0; d < V; ++d) {
    for (const auto& [key, coeff] : bucket[d]) {
      if (ring.is_zero(coeff)) continue;
      if (layout.exponent(key, n - 1) < q) {
        rem.emplace(key, coeff);
        continue;
      }
      const auto base = key - xq;
      const auto qc = ring.mul(coeff, lc_inv);
      quot.emplace(base, qc);
      for (const auto& s : tail) {
        const auto d2 = d - q + s.deg;
        if (d2 >= V) continue;
        auto& slot = bucket[d2][base + s.key];
        slot = ring.sub(slot, ring.mul(qc, s.coeff));
      }
    }
    Acc().swap(bucket[d]);
  }
  WeierstrassDivision out{Series(ring, n, N), Series(ring, n, N)};
  out.quot.assign_from(quot);
  out.rem.assign_from(rem);
  return out;
}

WeierstrassFactorization weierstrass_prepare(const Series& g) {
  const auto n = g.nvars();
  const auto axis = axis_order(g, n - 1);
  if (!axis) throw MathError(ErrorKind::NotDistinguished, "series vanishes on the X_n axis");
  if (*axis == 0) throw MathError(ErrorKind::ZeroOrUnitInput, "series is a unit");
  const auto q = *axis;
  const auto xq = Series::monomial(g.ring(), n, g.prec(), MultiIndex::unit(n, n - 1, q), g.ring().one());
  auto [quot, rem] = weierstrass_divide(xq, g, q);
  WeierstrassFactorization out{q, invert_unit(quot), sub(xq, rem), {}};
  if (n >= 2) {
    auto c = coefficients_in(out.H, n - 1);
    c.resize(q + 1, Series(g.ring(), n - 1, g.prec()));
    c.pop_back();
    out.lower = std::move(c);
  }
  return out;
}

}  // namespace hasse
