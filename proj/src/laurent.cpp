#include "hasse/laurent.hpp"

#include <algorithm>

#include "hasse/error.hpp"
#include "hasse/parse.hpp"

namespace hasse {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= kExactPrecision || b >= kExactPrecision) return kExactPrecision;
  return std::min(a + b, kExactPrecision);
}

// Valuation used in precision propagation: a zero element counts as
// vanishing up to its absolute precision.
std::int64_t val_or_prec(const LaurentSeries& a) { return a.is_zero() ? a.abs_prec : a.val; }

}  // namespace

LaurentField::LaurentField(const PrimeField& fp, std::int64_t rel_prec) : fp_(fp), rel_prec_(rel_prec) {
  if (rel_prec < 1) throw MathError(ErrorKind::EmptyPrecisionWindow, "Laurent precision must be positive");
}

LaurentSeries LaurentField::monomial(std::uint32_t c, std::int64_t e) const {
  if (c % fp_.characteristic() == 0) return zero();
  return {e, {c % fp_.characteristic()}, kExactPrecision};
}

LaurentSeries LaurentField::big_o(std::int64_t abs_prec) const { return {abs_prec, {}, abs_prec}; }

LaurentSeries LaurentField::make(std::int64_t val, std::vector<std::uint32_t> coeffs, std::int64_t abs_prec) const {
  if (abs_prec < kExactPrecision && val + static_cast<std::int64_t>(coeffs.size()) > abs_prec) {
    coeffs.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, abs_prec - val)));
  }
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
  if (lead == coeffs.size()) return {abs_prec, {}, abs_prec};
  while (coeffs.back() == 0) coeffs.pop_back();
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  return {val + static_cast<std::int64_t>(lead), std::move(coeffs), abs_prec};
}

LaurentSeries LaurentField::from_series(const TruncSeries<PrimeField>& f, bool exact) const {
  if (f.nvars() != 1) throw MathError(ErrorKind::DimensionMismatch, "Laurent embedding needs a univariate series");
  const std::int64_t abs = exact ? kExactPrecision : f.prec();
  if (f.is_zero()) return exact ? zero() : big_o(abs);
  std::vector<std::uint32_t> c(f.terms().back().deg + 1, 0);
  for (const auto& t : f.terms()) c[t.deg] = t.coeff.value;
  return make(0, std::move(c), abs);
}

LaurentSeries LaurentField::add(const LaurentSeries& a, const LaurentSeries& b) const {
  const auto abs = std::min(a.abs_prec, b.abs_prec);
  if (a.is_zero() && b.is_zero()) return {abs, {}, abs};
  std::int64_t lo = kExactPrecision;
  std::int64_t hi = -kExactPrecision;
  for (const auto* x : {&a, &b}) {
    if (x->is_zero()) continue;
    lo = std::min(lo, x->val);
    hi = std::max(hi, x->val + static_cast<std::int64_t>(x->coeffs.size()));
  }
  hi = std::min(hi, abs);
  if (hi <= lo) return {abs, {}, abs};
  std::vector<std::uint32_t> c(static_cast<std::size_t>(hi - lo), 0);
  for (const auto* x : {&a, &b}) {
    for (std::size_t i = 0; i < x->coeffs.size(); ++i) {
      const auto e = x->val + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      auto& slot = c[static_cast<std::size_t>(e - lo)];
      slot = fp_.add({slot}, {x->coeffs[i]}).value;
    }
  }
  return make(lo, std::move(c), abs);
}

LaurentSeries LaurentField::neg(const LaurentSeries& a) const {
  auto r = a;
  for (auto& c : r.coeffs) c = fp_.neg({c}).value;
  return r;
}

LaurentSeries LaurentField::sub(const LaurentSeries& a, const LaurentSeries& b) const { return add(a, neg(b)); }

LaurentSeries LaurentField::mul(const LaurentSeries& a, const LaurentSeries& b) const {
  const auto abs = std::min(sat_add(a.abs_prec, val_or_prec(b)), sat_add(b.abs_prec, val_or_prec(a)));
  if (a.is_zero() || b.is_zero()) return {abs, {}, abs};
  const auto lo = a.val + b.val;
  auto len = static_cast<std::int64_t>(a.coeffs.size() + b.coeffs.size() - 1);
  if (abs < kExactPrecision) len = std::min(len, abs - lo);
  if (len <= 0) return {abs, {}, abs};
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(len), 0);
  const std::uint64_t p = fp_.characteristic();
  for (std::size_t i = 0; i < a.coeffs.size() && static_cast<std::int64_t>(i) < len; ++i) {
    if (a.coeffs[i] == 0) continue;
    const auto limit = std::min<std::size_t>(b.coeffs.size(), static_cast<std::size_t>(len) - i);
    for (std::size_t j = 0; j < limit; ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t{a.coeffs[i]} * b.coeffs[j]) % p;
    }
  }
  std::vector<std::uint32_t> c(acc.begin(), acc.end());
  return make(lo, std::move(c), abs);
}

LaurentSeries LaurentField::inv(const LaurentSeries& a) const {
  if (a.is_zero()) throw MathError(ErrorKind::DivisionByZero, "inverse of a Laurent series that is zero at its precision");
  if (a.exact() && a.coeffs.size() == 1) return monomial(fp_.inv({a.coeffs[0]}).value, -a.val);
  const auto rel = a.exact() ? rel_prec_ : a.abs_prec - a.val;
  if (rel <= 0) throw MathError(ErrorKind::EmptyPrecisionWindow, "no certified digits to invert");
  const auto n = static_cast<std::size_t>(rel);
  // u * w = 1 mod X^n where u = a / X^val.
  std::vector<std::uint32_t> w(n, 0);
  const auto u0inv = fp_.inv({a.coeffs[0]});
  w[0] = u0inv.value;
  for (std::size_t k = 1; k < n; ++k) {
    PrimeFieldElem s{0};
    const auto top = std::min(k, a.coeffs.size() - 1);
    for (std::size_t j = 1; j <= top; ++j) s = fp_.add(s, fp_.mul({a.coeffs[j]}, {w[k - j]}));
    w[k] = fp_.neg(fp_.mul(s, u0inv)).value;
  }
  return make(-a.val, std::move(w), -a.val + rel);
}

LaurentSeries LaurentField::pow(const LaurentSeries& a, std::int64_t e) const {
  auto base = e < 0 ? inv(a) : a;
  auto n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  auto r = one();
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return r;
}

// (sum c_i X^i + O(X^N))^p = sum c_i X^(p i) + O(X^(p N)) over F_p.
LaurentSeries LaurentField::frobenius(const LaurentSeries& a) const {
  const std::int64_t p = fp_.characteristic();
  const auto abs = a.exact() ? kExactPrecision : a.abs_prec * p;
  if (a.is_zero()) return {abs, {}, abs};
  std::vector<std::uint32_t> c((a.coeffs.size() - 1) * static_cast<std::size_t>(p) + 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i * static_cast<std::size_t>(p)] = a.coeffs[i];
  return make(a.val * p, std::move(c), abs);
}

LaurentSeries LaurentField::pth_root(const LaurentSeries&) const {
  throw MathError(ErrorKind::NotAPthPower, "k((X)) is not perfect; p-th roots are not provided");
}

LaurentSeries LaurentField::truncate(const LaurentSeries& a, std::int64_t abs_prec) const {
  if (abs_prec >= a.abs_prec) return a;
  return make(a.val, a.coeffs, abs_prec);
}

std::string LaurentField::to_string(const LaurentSeries& a) const {
  std::string out;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const auto c = a.coeffs[i];
    if (c == 0) continue;
    const auto e = a.val + static_cast<std::int64_t>(i);
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "X";
    if (e != 1) out += "^" + std::to_string(e);
  }
  if (!a.exact()) {
    if (!out.empty()) out += " + ";
    out += "O(X^" + std::to_string(a.abs_prec) + ")";
  }
  return out.empty() ? "0" : out;
}

namespace {

class LaurentAlgebra {
 public:
  using Value = LaurentSeries;
  explicit LaurentAlgebra(const LaurentField& L) : L_(L) {}

  std::uint32_t characteristic() const { return L_.characteristic(); }
  Value number(std::int64_t v) const { return L_.from_int(v); }
  Value var(const std::string& name) const {
    if (name != "X" && name != "X1") throw MathError(ErrorKind::ParseError, "unknown variable '" + name + "'");
    return L_.monomial(1, 1);
  }
  Value root(const std::string& name, std::uint32_t) const {
    throw MathError(ErrorKind::ParseError, "tower root of '" + name + "' in a Laurent literal");
  }
  Value add(const Value& a, const Value& b) const { return L_.add(a, b); }
  Value sub(const Value& a, const Value& b) const { return L_.sub(a, b); }
  Value mul(const Value& a, const Value& b) const { return L_.mul(a, b); }
  Value div(const Value& a, const Value& b) const { return L_.div(a, b); }
  Value neg(const Value& a) const { return L_.neg(a); }
  Value pow(const Value& a, std::int64_t e) const { return L_.pow(a, e); }

 private:
  const LaurentField& L_;
};

}  // namespace

LaurentSeries parse_laurent(std::string_view text, const LaurentField& field) {
  auto e = parse_expr(text);
  return evaluate(*e, LaurentAlgebra(field));
}

}  // namespace hasse
