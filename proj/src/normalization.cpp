#include "hasse/normalization.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hasse/error.hpp"
#include "hasse/series_ops.hpp"

namespace hasse {

namespace {

std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

// Substitution X_j -> X_j + X_{active}^{sigma_j} on a series of arity n.
std::vector<Series> shift_images(const PrimeField& fp, std::size_t n, std::uint32_t prec, std::size_t active,
                                 const std::vector<std::uint32_t>& sigma) {
  std::vector<Series> g;
  for (std::size_t j = 0; j < n; ++j) {
    auto gj = Series::variable(fp, n, prec, j);
    if (j + 1 < active && sigma[j] > 0) gj.add_term(MultiIndex::unit(n, active - 1, sigma[j]), fp.one());
    g.push_back(std::move(gj));
  }
  return g;
}

bool trivial_layer(const CoordLayer& l) {
  return l.perm == identity_perm(l.perm.size()) && std::all_of(l.sigma.begin(), l.sigma.end(), [](auto s) { return s == 0; });
}

Series apply_layer(const CoordLayer& l, const Series& f) {
  if (trivial_layer(l)) return f;
  const auto n = f.nvars();
  auto perm = identity_perm(n);
  std::copy(l.perm.begin(), l.perm.end(), perm.begin());
  const auto g = permute_vars(f, perm);
  if (std::all_of(l.sigma.begin(), l.sigma.end(), [](auto s) { return s == 0; })) return g;
  return substitute(g, shift_images(f.ring(), n, f.prec(), l.active, l.sigma));
}

// Lowest term of a nonzero series, rendered.
std::string lowest_term(const Series& s) {
  if (s.is_zero()) return "0";
  auto r = s.zero_like();
  const auto& t = s.terms().front();
  r.add_key(t.key, t.coeff);
  return to_string(r);
}

// Polynomial in T of degree < q with coefficients in the remaining
// variables, reduced modulo the monic H with lower coefficients a.
using CoeffPoly = std::vector<Series>;

CoeffPoly times_t_mod(const CoeffPoly& v, const std::vector<Series>& a) {
  const auto q = a.size();
  CoeffPoly out(q, v.front().zero_like());
  const auto top = v[q - 1];
  for (std::size_t i = q - 1; i > 0; --i) out[i] = v[i - 1];
  for (std::size_t i = 0; i < q; ++i) out[i] = sub(out[i], mul(top, a[i]));
  return out;
}

// det of multiplication by r on A[T]/(H).  For monic H this is Res_T(H, r).
Series resultant_monic(const std::vector<Series>& a, CoeffPoly r) {
  const auto q = a.size();
  std::vector<std::vector<Series>> m(q, std::vector<Series>(q, a.front().zero_like()));
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t i = 0; i < q; ++i) m[i][j] = r[i];
    if (j + 1 < q) r = times_t_mod(r, a);
  }
  return series_determinant(m);
}

// r mod H as a polynomial in the last variable, padded to q entries.
CoeffPoly as_coeff_poly(const Series& r, std::uint32_t q, const Series& proto) {
  auto c = coefficients_in(r, r.nvars() - 1);
  c.resize(q, proto.zero_like());
  return c;
}

struct LevelAttempt {
  CoordLayer layer;
  WeierstrassFactorization witness;
  Separability sep;
};

// Permutation of `active` variables making variable j last.
std::vector<std::size_t> last_is(std::size_t active, std::size_t j) {
  auto p = identity_perm(active);
  std::swap(p[j], p[active - 1]);
  return p;
}

std::string describe(const CoordLayer& l, const std::string& outcome) {
  std::string s = "perm=[";
  for (std::size_t i = 0; i < l.perm.size(); ++i) s += (i ? "," : "") + std::to_string(l.perm[i] + 1);
  s += "] sigma=[";
  for (std::size_t i = 0; i < l.sigma.size(); ++i) s += (i ? "," : "") + std::to_string(l.sigma[i]);
  return s + "] " + outcome;
}

LevelAttempt attempt(const Series& f, const CoordLayer& layer) {
  const auto g = apply_layer(layer, f);
  auto w = weierstrass_prepare(g);
  auto sep = separability_check(w.H, w.q);
  return {layer, std::move(w), std::move(sep)};
}

// Chooses the layer for one recursion level.  Without the separability
// requirement this is plain distinguishing; with it, the permutations
// (identity first, then each variable moved last) and a short list of
// sigma choices are tried in order and the first separable H wins.
LevelAttempt choose_level(const Series& f, std::size_t active, const NormalizeOptions& opts,
                          std::vector<std::string>& log) {
  const auto p = f.ring().characteristic();
  auto make_layer = [&](std::vector<std::size_t> perm, std::vector<std::uint32_t> sigma) {
    CoordLayer l{active, std::move(perm), std::move(sigma), {}};
    for (std::size_t j = 0; j + 1 < active; ++j) {
      auto s = Series(f.ring(), f.nvars(), f.prec());
      if (l.sigma[j]) s.add_term(MultiIndex::unit(f.nvars(), active - 1, l.sigma[j]), f.ring().one());
      l.shifts.push_back(std::move(s));
    }
    return l;
  };
  if (!opts.ensure_separable || active == 1) {
    const auto d = distinguish(f, {opts.p_multiples, false});
    auto a = attempt(f, make_layer(identity_perm(active), d.sigma.sigma));
    log.push_back(describe(a.layer, a.sep.separable ? "separable " + a.sep.certificate : "inseparable"));
    return a;
  }
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::uint32_t>>> seen;
  for (std::size_t k = 0; k < active; ++k) {
    const auto perm = k == 0 ? identity_perm(active) : last_is(active, k - 1);
    const auto fp = permute_vars(f, [&] {
      auto full = identity_perm(f.nvars());
      std::copy(perm.begin(), perm.end(), full.begin());
      return full;
    }());
    const auto newton = newton_min_set(fp);
    std::vector<std::vector<std::uint32_t>> sigmas;
    if (axis_order(fp, active - 1)) sigmas.emplace_back(active - 1, 0);
    const auto base = select_sigma(newton, active, p, opts.p_multiples).sigma;
    for (std::uint32_t m = 1; m <= opts.sigma_budget; ++m) {
      auto s = base;
      for (auto& x : s) x *= m;
      std::set<std::uint64_t> values;
      for (const auto& a : newton) values.insert(linear_form(s, a));
      if (values.size() == newton.size()) sigmas.push_back(std::move(s));
    }
    for (const auto& s : sigmas) {
      if (!seen.insert({perm, s}).second) continue;
      const auto layer = make_layer(perm, s);
      try {
        auto a = attempt(f, layer);
        log.push_back(describe(layer, a.sep.separable ? "separable " + a.sep.certificate : "inseparable"));
        if (a.sep.separable) return a;
      } catch (const MathError& e) {
        if (e.kind() != ErrorKind::PrecisionTooLow && e.kind() != ErrorKind::NotDistinguished) throw;
        log.push_back(describe(layer, "precision too low"));
      }
    }
  }
  std::string msg = "no separable choice among " + std::to_string(log.size()) + " attempts:";
  for (const auto& s : log) msg += " {" + s + "}";
  throw MathError(ErrorKind::SeparabilitySearchExhausted, msg);
}

}  // namespace

Series apply_change(const CoordChange& change, const Series& f) {
  if (f.nvars() != change.nvars) throw MathError(ErrorKind::DimensionMismatch, "change arity");
  auto g = f;
  for (const auto& l : change.layers) g = apply_layer(l, g);
  return g;
}

// Berkowitz: the characteristic polynomial is built from leading principal
// submatrices by Toeplitz products, using only ring operations.
Series series_determinant(const std::vector<std::vector<Series>>& m) {
  const auto n = m.size();
  if (n == 0) throw MathError(ErrorKind::DimensionMismatch, "empty matrix");
  for (const auto& row : m) {
    if (row.size() != n) throw MathError(ErrorKind::DimensionMismatch, "matrix is not square");
  }
  const auto zero = m[0][0].zero_like();
  const auto one = zero.constant_like(zero.ring().one());
  std::vector<Series> c{one, neg(m[0][0])};
  for (std::size_t r = 1; r < n; ++r) {
    // A_r = [[A, S], [R, a]] with A the leading r x r block.
    std::vector<Series> col{one, neg(m[r][r])};
    std::vector<Series> v(r, zero);  // A^k S
    for (std::size_t i = 0; i < r; ++i) v[i] = m[i][r];
    for (std::size_t k = 0; k + 1 <= r; ++k) {
      auto dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot = add(dot, mul(m[r][i], v[i]));
      col.push_back(neg(dot));
      if (k + 1 == r) break;
      std::vector<Series> w(r, zero);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) w[i] = add(w[i], mul(m[i][j], v[j]));
      }
      v = std::move(w);
    }
    std::vector<Series> next(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] = add(next[i], mul(col[i - j], c[j]));
    }
    c = std::move(next);
  }
  return n % 2 ? neg(c[n]) : c[n];
}

Separability separability_check(const Series& H, std::uint32_t q) {
  Separability out;
  if (q == 0) throw MathError(ErrorKind::InvalidArgument, "degree must be positive");
  if (q == 1) {
    out.separable = true;
    out.certificate = "1";
    if (H.nvars() >= 2) out.resultant = Series::constant(H.ring(), H.nvars() - 1, H.prec(), H.ring().one());
    return out;
  }
  if (H.nvars() == 1) {
    // Over the constants H = T^q, which shares the root 0 with its derivative.
    out.certificate = "0";
    return out;
  }
  const auto n = H.nvars();
  auto a = coefficients_in(H, n - 1);
  a.resize(q + 1, Series(H.ring(), n - 1, H.prec()));
  a.pop_back();
  const auto dH = partial_derivative(H, n - 1);
  auto res = resultant_monic(a, as_coeff_poly(dH, q, a.front()));
  out.separable = !res.is_zero();
  out.certificate = lowest_term(res);
  out.resultant = std::move(res);
  return out;
}

NormalizationResult normalize_ideal(const std::vector<Series>& gens, const NormalizeOptions& opts) {
  if (gens.empty()) throw MathError(ErrorKind::ImproperIdeal, "no generators");
  const auto n = gens.front().nvars();
  NormalizationResult out;
  out.change.nvars = n;
  std::vector<Series> cur;
  for (const auto& g : gens) {
    if (g.nvars() != n) throw MathError(ErrorKind::DimensionMismatch, "generators differ in arity");
    if (g.is_zero()) continue;
    if (!g.ring().is_zero(g.constant_term())) throw MathError(ErrorKind::ImproperIdeal, "a generator is a unit");
    cur.push_back(g);
  }
  if (cur.empty()) throw MathError(ErrorKind::ImproperIdeal, "zero ideal");

  // Generators at each level live in the first `active` variables; they are
  // kept in arity `active` and the layers are recorded in arity n.
  std::size_t active = n;
  while (true) {
    const auto f = cur.front();
    auto chosen = choose_level(f, active, opts, out.attempts);
    CoordLayer full = chosen.layer;
    for (auto& s : full.shifts) {
      // Embed the shift monomial into n variables.
      Series e(s.ring(), n, gens.front().prec());
      for (const auto& t : s.terms()) {
        auto x = s.layout().unpack(t.key).values();
        x.resize(n, 0);
        e.add_term(MultiIndex(std::move(x)), t.coeff);
      }
      s = std::move(e);
    }
    out.change.layers.push_back(std::move(full));
    const auto& H = chosen.witness.H;
    const auto q = chosen.witness.q;

    std::vector<Series> next;
    for (std::size_t i = 1; i < cur.size(); ++i) {
      const auto h = apply_layer(chosen.layer, cur[i]);
      if (active == 1) {
        // k[[X]] is a valuation ring: a non-unit generator adds nothing.
        continue;
      }
      const auto rem = weierstrass_divide(h, H, q).rem;
      if (rem.is_zero()) continue;
      auto res = resultant_monic(chosen.witness.lower, as_coeff_poly(rem, q, chosen.witness.lower.front()));
      if (res.is_zero()) {
        throw MathError(ErrorKind::ContractionInconclusive,
                        "generator " + std::to_string(i + 1) + " is nonzero modulo H but its resultant vanishes");
      }
      if (!res.ring().is_zero(res.constant_term())) throw MathError(ErrorKind::ImproperIdeal, "contraction contains a unit");
      next.push_back(std::move(res));
    }
    out.levels.push_back({active, std::move(chosen.witness), std::move(chosen.sep)});
    if (next.empty()) break;
    cur = std::move(next);
    --active;
  }
  out.e = active - 1;
  out.separable = std::all_of(out.levels.begin(), out.levels.end(),
                              [](const NormalizationLevel& l) { return l.separability.separable; });
  return out;
}

NormalizationResult normalize_principal(const Series& f, const NormalizeOptions& opts) {
  if (f.is_zero()) throw MathError(ErrorKind::ZeroOrUnitInput, "zero series");
  if (!f.ring().is_zero(f.constant_term())) throw MathError(ErrorKind::ZeroOrUnitInput, "series is a unit");
  return normalize_ideal({f}, opts);
}

}  // namespace hasse
