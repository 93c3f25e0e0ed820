#include "hasse/fp_poly.hpp"

#include <algorithm>

#include "hasse/error.hpp"

namespace hasse {

FpPoly::FpPoly(std::vector<std::uint32_t> coeffs) : c_(std::move(coeffs)) { trim(); }

FpPoly FpPoly::monomial(std::uint32_t c, std::size_t degree) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly poly_add(const PrimeField& f, const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint32_t> r(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add({a.coeff(i)}, {b.coeff(i)}).value;
  return FpPoly(std::move(r));
}

FpPoly poly_sub(const PrimeField& f, const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint32_t> r(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub({a.coeff(i)}, {b.coeff(i)}).value;
  return FpPoly(std::move(r));
}

FpPoly poly_mul(const PrimeField& f, const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::uint32_t> r(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      r[i + j] = f.add({r[i + j]}, f.mul({a.coeffs()[i]}, {b.coeffs()[j]})).value;
    }
  }
  return FpPoly(std::move(r));
}

FpPoly poly_scale(const PrimeField& f, const FpPoly& a, std::uint32_t c) {
  std::vector<std::uint32_t> r(a.coeffs());
  for (auto& x : r) x = f.mul({x}, {c}).value;
  return FpPoly(std::move(r));
}

std::pair<FpPoly, FpPoly> poly_divmod(const PrimeField& f, const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw MathError(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {FpPoly{}, a};
  std::vector<std::uint32_t> rem(a.coeffs());
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<std::uint32_t> quot(rem.size() - db, 0);
  const auto lead_inv = f.inv({b.leading()});
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    auto c = f.mul({rem[k]}, lead_inv);
    quot[k - db] = c.value;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[k - db + j] = f.sub({rem[k - db + j]}, f.mul(c, {b.coeffs()[j]})).value;
    }
  }
  return {FpPoly(std::move(quot)), FpPoly(std::move(rem))};
}

FpPoly poly_monic(const PrimeField& f, const FpPoly& a) {
  if (a.is_zero()) return a;
  return poly_scale(f, a, f.inv({a.leading()}).value);
}

FpPoly poly_gcd(const PrimeField& f, FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    auto r = poly_divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(f, a);
}

FpPoly poly_inflate(const FpPoly& a, std::size_t k) {
  if (a.is_zero()) return a;
  std::vector<std::uint32_t> r((a.coeffs().size() - 1) * k + 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) r[i * k] = a.coeffs()[i];
  return FpPoly(std::move(r));
}

bool poly_is_inflated(const FpPoly& a, std::size_t k) {
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] != 0 && i % k != 0) return false;
  }
  return true;
}

FpPoly poly_deflate(const FpPoly& a, std::size_t k) {
  if (a.is_zero()) return a;
  std::vector<std::uint32_t> r((a.coeffs().size() - 1) / k + 1, 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeffs()[i * k];
  return FpPoly(std::move(r));
}

std::string poly_to_string(const FpPoly& a, std::string_view var) {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    const auto c = a.coeffs()[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace hasse
