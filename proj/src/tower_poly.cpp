#include "hasse/tower_poly.hpp"

#include <algorithm>

#include "hasse/error.hpp"
#include "hasse/parse.hpp"
#include "hasse/perfect_closure.hpp"

namespace hasse {

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) {
    if (r > (std::uint64_t{1} << 32)) throw MathError(ErrorKind::InvalidArgument, "tower degree overflow");
    r *= b;
  }
  return r;
}

UniSeries zero_series(const PrimeField& f) { return UniSeries(f, 1, kPolyPrec); }

class TowerAlgebra {
 public:
  using Value = TowerPoly;
  explicit TowerAlgebra(const PrimeField& f) : f_(f) {}

  std::uint32_t characteristic() const { return f_.characteristic(); }
  Value number(std::int64_t v) const { return {0, {UniSeries::constant(f_, 1, kPolyPrec, f_.from_int(v))}, true}; }
  Value var(const std::string& name) const {
    if (name == "X" || name == "X1") return {0, {UniSeries::variable(f_, 1, kPolyPrec, 0)}, true};
    if (name == "t") return root(name, 0);
    throw MathError(ErrorKind::ParseError, "unknown symbol '" + name + "'");
  }
  Value root(const std::string& name, std::uint32_t m) const {
    if (name != "t") throw MathError(ErrorKind::ParseError, "fractional power of '" + name + "'");
    return {m, {zero_series(f_), UniSeries::constant(f_, 1, kPolyPrec, f_.one())}, true};
  }
  Value add(const Value& a, const Value& b) const { return tower_add(a, b); }
  Value sub(const Value& a, const Value& b) const { return tower_sub(a, b); }
  Value mul(const Value& a, const Value& b) const { return tower_mul(a, b); }
  Value neg(const Value& a) const { return tower_scale(a, f_.neg(f_.one())); }
  Value div(const Value& a, const Value& b) const {
    const auto t = tower_trim(b);
    if (t.coeffs.size() != 1 || t.coeffs[0].size() != 1 || t.coeffs[0].terms()[0].deg != 0) {
      throw MathError(ErrorKind::ParseError, "polynomial literals may only divide by nonzero constants");
    }
    return tower_scale(a, f_.inv(t.coeffs[0].constant_term()));
  }
  Value pow(const Value& a, std::int64_t e) const {
    if (e < 0) throw MathError(ErrorKind::ParseError, "negative exponent in a polynomial literal");
    Value r = number(1);
    for (std::int64_t i = 0; i < e; ++i) r = tower_mul(r, a);
    return r;
  }

 private:
  PrimeField f_;
};

}  // namespace

TowerPoly tower_trim(TowerPoly f) {
  while (!f.coeffs.empty() && f.coeffs.back().is_zero()) f.coeffs.pop_back();
  return f;
}

TowerPoly tower_lift(const TowerPoly& f, std::uint32_t m) {
  if (m < f.level) throw MathError(ErrorKind::InvalidArgument, "cannot lift to a lower level");
  if (m == f.level || f.coeffs.empty()) return {m, f.coeffs, f.exact};
  const auto step = ipow(f.coeffs[0].ring().characteristic(), m - f.level);
  TowerPoly r{m, {}, f.exact};
  r.coeffs.assign((f.coeffs.size() - 1) * step + 1, f.coeffs[0].zero_like());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) r.coeffs[i * step] = f.coeffs[i];
  return r;
}

namespace {

std::pair<TowerPoly, TowerPoly> common_level(const TowerPoly& a, const TowerPoly& b) {
  const auto m = std::max(a.level, b.level);
  return {tower_lift(a, m), tower_lift(b, m)};
}

}  // namespace

TowerPoly tower_add(const TowerPoly& a0, const TowerPoly& b0) {
  auto [a, b] = common_level(a0, b0);
  if (a.coeffs.size() < b.coeffs.size()) std::swap(a, b);
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) a.coeffs[i] = add(a.coeffs[i], b.coeffs[i]);
  a.exact = a.exact && b.exact;
  return tower_trim(std::move(a));
}

TowerPoly tower_scale(const TowerPoly& a, PrimeFieldElem c) {
  auto r = a;
  for (auto& x : r.coeffs) x = scale(x, c);
  return tower_trim(std::move(r));
}

TowerPoly tower_sub(const TowerPoly& a, const TowerPoly& b) {
  if (b.coeffs.empty()) return a;
  const auto& f = b.coeffs[0].ring();
  return tower_add(a, tower_scale(b, f.neg(f.one())));
}

TowerPoly tower_mul(const TowerPoly& a0, const TowerPoly& b0) {
  auto [a, b] = common_level(a0, b0);
  TowerPoly r{a.level, {}, a.exact && b.exact};
  if (a.coeffs.empty() || b.coeffs.empty()) return r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, a.coeffs[0].zero_like());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j].is_zero()) continue;
      r.coeffs[i + j] = add(r.coeffs[i + j], mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  return tower_trim(std::move(r));
}

bool tower_equal(const TowerPoly& a, const TowerPoly& b) {
  auto d = tower_sub(a, b);
  return d.degree() < 0;
}

TowerPoly parse_tower_poly(std::string_view text, const PrimeField& field) {
  auto e = parse_expr(text);
  auto r = tower_trim(evaluate(*e, TowerAlgebra(field)));
  for (const auto& c : r.coeffs) {
    if (!c.is_zero() && c.terms().back().deg >= kPolyPrec / 2) {
      throw MathError(ErrorKind::ParseError, "X-degree too large in a polynomial literal");
    }
  }
  return r;
}

std::string to_string(const TowerPoly& f) {
  if (f.degree() < 0) return "0";
  const auto p = f.coeffs[0].ring().characteristic();
  const auto t = tower_token(p, f.level);
  std::string out;
  for (std::size_t r = 0; r < f.coeffs.size(); ++r) {
    const auto& c = f.coeffs[r];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    auto cs = to_string(c, {"X"});
    const bool simple = c.size() == 1;
    if (r == 0) {
      out += cs;
      continue;
    }
    if (!(simple && cs == "1")) out += (simple ? cs : "(" + cs + ")") + "*";
    out += t;
    if (r > 1) out += "^" + std::to_string(r);
  }
  if (!f.exact) out += " + O(X^" + std::to_string(f.coeffs[0].prec()) + ")";
  return out;
}

}  // namespace hasse
