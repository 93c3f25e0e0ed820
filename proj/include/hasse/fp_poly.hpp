#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hasse/prime_field.hpp"

namespace hasse {

// Dense univariate polynomial over F_p, coefficients from degree 0 upward,
// never with a trailing zero.
class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(std::vector<std::uint32_t> coeffs);
  static FpPoly constant(std::uint32_t c) { return FpPoly({c}); }
  static FpPoly monomial(std::uint32_t c, std::size_t degree);

  bool is_zero() const noexcept { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  std::uint32_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint32_t>& coeffs() const noexcept { return c_; }

  friend bool operator==(const FpPoly&, const FpPoly&) = default;

 private:
  void trim();
  std::vector<std::uint32_t> c_;
};

FpPoly poly_add(const PrimeField& f, const FpPoly& a, const FpPoly& b);
FpPoly poly_sub(const PrimeField& f, const FpPoly& a, const FpPoly& b);
FpPoly poly_mul(const PrimeField& f, const FpPoly& a, const FpPoly& b);
FpPoly poly_scale(const PrimeField& f, const FpPoly& a, std::uint32_t c);
std::pair<FpPoly, FpPoly> poly_divmod(const PrimeField& f, const FpPoly& a, const FpPoly& b);
FpPoly poly_gcd(const PrimeField& f, FpPoly a, FpPoly b);  // monic, or zero
FpPoly poly_monic(const PrimeField& f, const FpPoly& a);

// u -> u^k on the exponents.
FpPoly poly_inflate(const FpPoly& a, std::size_t k);
// True iff every exponent is a multiple of k.
bool poly_is_inflated(const FpPoly& a, std::size_t k);
// Inverse of poly_inflate; requires poly_is_inflated(a, k).
FpPoly poly_deflate(const FpPoly& a, std::size_t k);

std::string poly_to_string(const FpPoly& a, std::string_view var);

}  // namespace hasse
