#include "hasse/residue.hpp"

#include <algorithm>
#include <functional>

#include "hasse/error.hpp"
#include "hasse/series_ops.hpp"

namespace hasse {

namespace {

using LPoly = std::vector<LaurentSeries>;

constexpr std::size_t kMaxResidueDegree = 4096;

bool exact_zero(const LaurentSeries& a) { return a.is_zero() && a.exact(); }

// Drops leading coefficients that vanish at their precision.  An inexact
// one means the true degree is unknown; `lost` records that.
void trim(LPoly& a, bool& lost) {
  while (!a.empty() && a.back().is_zero()) {
    if (!a.back().exact()) lost = true;
    a.pop_back();
  }
}

LPoly poly_mul(const LaurentField& L, const LPoly& a, const LPoly& b) {
  if (a.empty() || b.empty()) return {};
  LPoly r(a.size() + b.size() - 1, L.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (exact_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (exact_zero(b[j])) continue;
      r[i + j] = L.add(r[i + j], L.mul(a[i], b[j]));
    }
  }
  return r;
}

LPoly poly_sub(const LaurentField& L, LPoly a, const LPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), L.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = L.sub(a[i], b[i]);
  return a;
}

// a = q b + r with deg r < deg b; b is trimmed and nonempty.
std::pair<LPoly, LPoly> poly_divmod(const LaurentField& L, LPoly a, const LPoly& b, bool& lost) {
  const auto db = b.size() - 1;
  if (a.size() <= db) return {{}, std::move(a)};
  LPoly q(a.size() - db, L.zero());
  const auto inv_lc = L.inv(b.back());
  for (auto k = a.size(); k-- > db;) {
    const auto c = L.mul(a[k], inv_lc);
    q[k - db] = c;
    if (exact_zero(c)) continue;
    for (std::size_t i = 0; i < db; ++i) {
      if (!exact_zero(b[i])) a[k - db + i] = L.sub(a[k - db + i], L.mul(c, b[i]));
    }
  }
  a.resize(db);
  trim(a, lost);
  return {std::move(q), std::move(a)};
}

std::int64_t value_at_least(const LaurentSeries& a) { return a.is_zero() ? a.abs_prec : a.val; }

LaurentSeries horner(const LaurentField& L, const LPoly& f, const LaurentSeries& x) {
  auto r = L.zero();
  for (auto i = f.size(); i-- > 0;) r = L.add(L.mul(r, x), f[i]);
  return r;
}

}  // namespace

std::uint64_t ResidueFieldCtx::theta_exponent(std::uint32_t m) const {
  if (m > M) {
    throw MathError(ErrorKind::LevelExceedsContext,
                    "level " + std::to_string(m) + " exceeds working level " + std::to_string(M));
  }
  std::uint64_t e = 1;
  for (std::uint32_t i = m; i < M; ++i) e *= fp.characteristic();
  return e;
}

std::optional<std::string> reducibility_witness(const LPoly& coeffs, const LaurentField& L) {
  auto a = coeffs;
  bool lost = false;
  trim(a, lost);
  if (a.size() <= 2) return std::nullopt;
  const auto d = static_cast<std::int64_t>(a.size() - 1);
  if (a[0].is_zero()) return "t divides the generator";

  // Lower convex hull of (r, v(a_r)).
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (std::int64_t r = 0; r <= d; ++r) {
    if (!a[static_cast<std::size_t>(r)].is_zero()) pts.emplace_back(r, a[static_cast<std::size_t>(r)].val);
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& b = hull.back();
      const auto cross = (b.first - o.first) * (q.second - o.second) - (b.second - o.second) * (q.first - o.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(q);
  }
  if (hull.size() > 2) return "Newton polygon has " + std::to_string(hull.size() - 1) + " slopes";

  // One slope: a root in k((X)) has valuation w with v_0 = v_d + d w.
  const auto v0 = a[0].val;
  const auto vd = a.back().val;
  if ((v0 - vd) % d != 0 || d > 4) return std::nullopt;
  const auto w = (v0 - vd) / d;
  // Taylor expansion around a partial root r_k shows that F(r_k) has
  // valuation at least v0 + k when r_k extends to a root.
  constexpr int kDepth = 8;
  constexpr int kNodeBudget = 20000;
  int nodes = 0;
  const auto p = L.characteristic();
  std::optional<std::string> found;
  std::function<void(const LaurentSeries&, int)> dfs = [&](const LaurentSeries& r, int k) {
    if (found || nodes > kNodeBudget) return;
    for (std::uint32_t c = (k == 0 ? 1 : 0); c < p && !found; ++c) {
      ++nodes;
      const auto next = L.add(r, L.monomial(c, w + k));
      const auto val = horner(L, a, next);
      if (exact_zero(val)) {
        found = "root " + L.to_string(next);
        return;
      }
      if (value_at_least(val) < v0 + k + 1) continue;
      if (k + 1 == kDepth) {
        found = "approximate root " + L.to_string(next) + " to " + std::to_string(kDepth) + " digits";
        return;
      }
      dfs(next, k + 1);
    }
  };
  dfs(L.zero(), 0);
  return found;
}

std::shared_ptr<const ResidueFieldCtx> residue_ctx_build(const TowerPoly& F0, std::uint32_t M,
                                                         const ResidueOptions& opts) {
  auto F = tower_trim(F0);
  if (F.degree() < 1) throw MathError(ErrorKind::InvalidGenerator, "generator must have positive degree in t");
  const auto& fp = F.coeffs[0].ring();
  const auto d = static_cast<std::size_t>(F.degree());
  if (d > opts.max_degree) {
    throw MathError(ErrorKind::InvalidGenerator,
                    "generator degree " + std::to_string(d) + " exceeds bound " + std::to_string(opts.max_degree));
  }
  if (M < F.level) {
    throw MathError(ErrorKind::InvalidGenerator,
                    "working level " + std::to_string(M) + " below generator level " + std::to_string(F.level));
  }
  if (opts.validate_generator) {
    const bool has_one = std::any_of(F.coeffs.begin(), F.coeffs.end(), [&](const UniSeries& c) {
      return c.size() == 1 && c.terms()[0].deg == 0 && c.terms()[0].coeff.value == 1;
    });
    if (!has_one) throw MathError(ErrorKind::InvalidGenerator, "no coefficient equal to 1");
    const bool has_non_power =
        std::any_of(F.coeffs.begin(), F.coeffs.end(), [](const UniSeries& c) { return pth_power_witness(c).has_value(); });
    if (!has_non_power) throw MathError(ErrorKind::InvalidGenerator, "all coefficients are p-th powers");
  }

  auto ctx = std::make_shared<ResidueFieldCtx>(ResidueFieldCtx{fp, LaurentField(fp, opts.laurent_prec), F.level, M, F, d, {}});
  const auto& L = ctx->L;
  LPoly a;
  for (const auto& c : F.coeffs) a.push_back(L.from_series(c, F.exact));
  if (!opts.assume_irreducible) {
    if (auto w = reducibility_witness(a, L)) {
      throw MathError(ErrorKind::InvalidGenerator, "generator looks reducible over k((X)): " + *w);
    }
  }
  const auto step = ctx->theta_exponent(F.level);
  if (d * step > kMaxResidueDegree) throw MathError(ErrorKind::InvalidGenerator, "residue field degree too large");
  const auto inv_lc = L.inv(a[d]);
  ctx->fmin.assign(d * step, L.zero());
  for (std::size_t r = 0; r < d; ++r) ctx->fmin[r * step] = L.mul(a[r], inv_lc);
  return ctx;
}

ResidueElem ResidueField::zero() const { return {LPoly(ctx_->degree(), ctx_->L.zero())}; }

ResidueElem ResidueField::embed(const LaurentSeries& a) const {
  auto r = zero();
  r.coords[0] = a;
  return r;
}

ResidueElem ResidueField::theta_power(std::uint64_t e) const {
  if (e < ctx_->degree()) {
    auto r = zero();
    r.coords[static_cast<std::size_t>(e)] = ctx_->L.one();
    return r;
  }
  // In degree one theta_M is the root -fmin[0] of T + fmin[0].
  const auto g = ctx_->degree() > 1 ? theta_power(1) : embed(ctx_->L.neg(ctx_->fmin[0]));
  return pow(g, e);
}

ResidueElem ResidueField::theta(std::uint32_t m) const { return theta_power(ctx_->theta_exponent(m)); }

ResidueElem ResidueField::reduce(LPoly poly) const {
  const auto& L = ctx_->L;
  const auto D = ctx_->degree();
  for (auto k = poly.size(); k-- > D;) {
    const auto c = poly[k];
    if (exact_zero(c)) continue;
    for (std::size_t i = 0; i < D; ++i) {
      if (!exact_zero(ctx_->fmin[i])) poly[k - D + i] = L.sub(poly[k - D + i], L.mul(c, ctx_->fmin[i]));
    }
  }
  poly.resize(D, L.zero());
  return {std::move(poly)};
}

ResidueElem ResidueField::reduce_tower(const TowerPoly& a) const {
  if (a.level > ctx_->M) {
    throw MathError(ErrorKind::LevelExceedsContext,
                    "level " + std::to_string(a.level) + " exceeds working level " + std::to_string(ctx_->M));
  }
  const auto lifted = tower_lift(a, ctx_->M);
  LPoly poly;
  for (const auto& c : lifted.coeffs) poly.push_back(ctx_->L.from_series(c, a.exact));
  return reduce(std::move(poly));
}

bool ResidueField::is_zero(const ResidueElem& a) const {
  return std::all_of(a.coords.begin(), a.coords.end(), [](const LaurentSeries& c) { return c.is_zero(); });
}

ResidueElem ResidueField::add(const ResidueElem& a, const ResidueElem& b) const {
  auto r = zero();
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    const auto& x = i < a.coords.size() ? a.coords[i] : r.coords[i];
    const auto& y = i < b.coords.size() ? b.coords[i] : r.coords[i];
    r.coords[i] = ctx_->L.add(x, y);
  }
  return r;
}

ResidueElem ResidueField::neg(const ResidueElem& a) const {
  auto r = a;
  for (auto& c : r.coords) c = ctx_->L.neg(c);
  return r;
}

ResidueElem ResidueField::sub(const ResidueElem& a, const ResidueElem& b) const { return add(a, neg(b)); }

ResidueElem ResidueField::mul(const ResidueElem& a, const ResidueElem& b) const {
  if (a.coords.empty() || b.coords.empty()) return zero();
  return reduce(poly_mul(ctx_->L, a.coords, b.coords));
}

// Extended Euclid in L[T]: s_i a = r_i mod Fmin.
ResidueElem ResidueField::inv(const ResidueElem& a) const {
  const auto& L = ctx_->L;
  if (is_zero(a)) throw MathError(ErrorKind::DivisionByZero, "inverse of zero in the residue field");
  bool lost = false;
  LPoly r0 = ctx_->fmin;
  r0.push_back(L.one());
  LPoly r1 = a.coords;
  trim(r1, lost);
  LPoly s0;
  LPoly s1{L.one()};
  while (r1.size() > 1) {
    auto [q, rem] = poly_divmod(L, std::move(r0), r1, lost);
    auto s2 = poly_sub(L, s0, poly_mul(L, q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) {
      if (lost) throw MathError(ErrorKind::PrecisionExhausted, "Euclidean remainders lost the precision window");
      throw MathError(ErrorKind::DivisionByZero, "zero divisor in the residue field (generator not irreducible?)");
    }
  }
  const auto c = L.inv(r1[0]);
  for (auto& x : s1) x = L.mul(x, c);
  auto out = reduce(std::move(s1));
  if (is_zero(out) || !equal(mul(a, out), one())) {
    throw MathError(ErrorKind::PrecisionExhausted, "inverse not certified at the available precision");
  }
  return out;
}

ResidueElem ResidueField::pow(const ResidueElem& a, std::uint64_t e) const {
  auto r = one();
  auto b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

ResidueElem ResidueField::frobenius(const ResidueElem& a) const {
  const auto& L = ctx_->L;
  const std::size_t p = characteristic();
  if (a.coords.empty()) return zero();
  LPoly poly((a.coords.size() - 1) * p + 1, L.zero());
  for (std::size_t i = 0; i < a.coords.size(); ++i) poly[i * p] = L.frobenius(a.coords[i]);
  return reduce(std::move(poly));
}

ResidueElem ResidueField::pth_root(const ResidueElem&) const {
  throw MathError(ErrorKind::NotAPthPower, "p-th roots are not available in a fixed residue level");
}

std::int64_t ResidueField::precision(const ResidueElem& a) const {
  std::int64_t best = kExactPrecision;
  for (const auto& c : a.coords) best = std::min(best, c.abs_prec);
  return best;
}

std::optional<LaurentSeries> ResidueField::as_laurent(const ResidueElem& a) const {
  for (std::size_t i = 1; i < a.coords.size(); ++i) {
    if (!a.coords[i].is_zero()) return std::nullopt;
  }
  return a.coords.empty() ? ctx_->L.zero() : a.coords[0];
}

std::string ResidueField::to_string(const ResidueElem& a) const {
  const auto& L = ctx_->L;
  const auto name = "theta" + std::to_string(ctx_->M);
  std::string out;
  std::size_t nonzero = 0;
  for (const auto& c : a.coords) nonzero += c.is_zero() ? 0 : 1;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const auto& c = a.coords[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    auto cs = L.to_string(c);
    const bool compound = cs.find(' ') != std::string::npos;
    if (i == 0) {
      out += compound && nonzero > 1 ? "(" + cs + ")" : cs;
      continue;
    }
    if (cs != "1") out += (compound ? "(" + cs + ")" : cs) + "*";
    out += name;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace hasse
