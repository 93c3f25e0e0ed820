#include "hasse/perfect_closure.hpp"

#include <algorithm>

#include "hasse/error.hpp"

namespace hasse {

namespace {

std::size_t pow_size(std::size_t base, std::uint32_t e) {
  std::size_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

std::string tower_token(std::uint32_t p, std::uint32_t m) {
  if (m == 0) return "t";
  return "t^(1/" + std::to_string(p) + "^" + std::to_string(m) + ")";
}

PerfClosureElem PerfectClosure::t(std::uint32_t m) const {
  return make(m, FpPoly::monomial(1, 1), FpPoly::constant(1));
}

PerfClosureElem PerfectClosure::make(std::uint32_t level, FpPoly num, FpPoly den) const {
  if (den.is_zero()) throw MathError(ErrorKind::DivisionByZero, "zero denominator in k_inf");
  return canonicalize({level, std::move(num), std::move(den)});
}

PerfClosureElem PerfectClosure::canonicalize(Elem a) const {
  if (a.num.is_zero()) return zero();
  auto g = poly_gcd(fp_, a.num, a.den);
  if (g.degree() > 0) {
    a.num = poly_divmod(fp_, a.num, g).first;
    a.den = poly_divmod(fp_, a.den, g).first;
  }
  const auto lead = fp_.inv({a.den.leading()}).value;
  a.num = poly_scale(fp_, a.num, lead);
  a.den = poly_scale(fp_, a.den, lead);
  const std::size_t p = fp_.characteristic();
  while (a.level > 0 && poly_is_inflated(a.num, p) && poly_is_inflated(a.den, p)) {
    a.num = poly_deflate(a.num, p);
    a.den = poly_deflate(a.den, p);
    --a.level;
  }
  return a;
}

PerfClosureElem PerfectClosure::lift(const Elem& a, std::uint32_t level) const {
  if (level <= a.level) return a;
  const auto k = pow_size(fp_.characteristic(), level - a.level);
  return {level, poly_inflate(a.num, k), poly_inflate(a.den, k)};
}

PerfClosureElem PerfectClosure::add(const Elem& a, const Elem& b) const {
  const auto m = std::max(a.level, b.level);
  const auto x = lift(a, m);
  const auto y = lift(b, m);
  return make(m, poly_add(fp_, poly_mul(fp_, x.num, y.den), poly_mul(fp_, y.num, x.den)), poly_mul(fp_, x.den, y.den));
}

PerfClosureElem PerfectClosure::neg(const Elem& a) const {
  return {a.level, poly_scale(fp_, a.num, fp_.neg(fp_.one()).value), a.den};
}

PerfClosureElem PerfectClosure::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

PerfClosureElem PerfectClosure::mul(const Elem& a, const Elem& b) const {
  const auto m = std::max(a.level, b.level);
  const auto x = lift(a, m);
  const auto y = lift(b, m);
  return make(m, poly_mul(fp_, x.num, y.num), poly_mul(fp_, x.den, y.den));
}

PerfClosureElem PerfectClosure::inv(const Elem& a) const {
  if (a.num.is_zero()) throw MathError(ErrorKind::DivisionByZero, "inverse of 0 in k_inf");
  return make(a.level, a.den, a.num);
}

PerfClosureElem PerfectClosure::pow(const Elem& a, std::int64_t e) const {
  Elem base = e < 0 ? inv(a) : a;
  auto n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  Elem r = one();
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

// Over F_p, (sum a_i u^i)^p = sum a_i u^(p i).
PerfClosureElem PerfectClosure::frobenius(const Elem& a) const {
  const std::size_t p = fp_.characteristic();
  return make(a.level, poly_inflate(a.num, p), poly_inflate(a.den, p));
}

// The same coefficients read one level up: (sum a_i w^i)^p = sum a_i u^i
// for w = t_(m+1).
PerfClosureElem PerfectClosure::pth_root(const Elem& a) const {
  return make(a.level + 1, a.num, a.den);
}

std::string PerfectClosure::to_string(const Elem& a) const {
  const auto var = tower_token(fp_.characteristic(), a.level);
  auto num = poly_to_string(a.num, var);
  if (a.den == FpPoly::constant(1)) return num;
  return "(" + num + ")/(" + poly_to_string(a.den, var) + ")";
}

}  // namespace hasse
