#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hasse/prime_field.hpp"
#include "hasse/trunc_series.hpp"

namespace hasse {

// Absolute precision of an element that is known exactly (a Laurent
// polynomial).  Arithmetic saturates at this value.
inline constexpr std::int64_t kExactPrecision = std::numeric_limits<std::int64_t>::max() / 4;

// Element of k((X)) known modulo X^abs_prec.
//
// coeffs[i] is the coefficient of X^(val + i).  The first stored
// coefficient is nonzero, trailing zeros are dropped, and nothing at or
// beyond abs_prec is stored.  An element with no coefficients is zero at
// its precision and has val == abs_prec.
struct LaurentSeries {
  std::int64_t val = kExactPrecision;
  std::vector<std::uint32_t> coeffs;
  std::int64_t abs_prec = kExactPrecision;

  bool exact() const noexcept { return abs_prec >= kExactPrecision; }
  bool is_zero() const noexcept { return coeffs.empty(); }
  // Number of certified digits from the valuation on.
  std::int64_t window() const noexcept { return abs_prec - val; }
  std::uint32_t coeff(std::int64_t e) const noexcept {
    if (e < val || e - val >= static_cast<std::int64_t>(coeffs.size())) return 0;
    return coeffs[static_cast<std::size_t>(e - val)];
  }

  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;
};

// The field L = F_p((X)) with precision tracking.  rel_prec is the number
// of digits produced when inverting an exact element that is not a
// monomial (its inverse is an infinite series).
class LaurentField {
 public:
  using Elem = LaurentSeries;

  LaurentField(const PrimeField& fp, std::int64_t rel_prec);

  const PrimeField& base() const noexcept { return fp_; }
  std::uint32_t characteristic() const noexcept { return fp_.characteristic(); }
  std::int64_t rel_prec() const noexcept { return rel_prec_; }

  Elem zero() const { return {}; }
  Elem one() const { return monomial(1, 0); }
  Elem from_int(std::int64_t v) const { return monomial(fp_.from_int(v).value, 0); }
  Elem monomial(std::uint32_t c, std::int64_t e) const;
  // Zero known modulo X^abs_prec.
  Elem big_o(std::int64_t abs_prec) const;
  // Dense constructor; canonicalizes.
  Elem make(std::int64_t val, std::vector<std::uint32_t> coeffs, std::int64_t abs_prec) const;
  // A univariate series over F_p; exact means "this is a polynomial".
  Elem from_series(const TruncSeries<PrimeField>& f, bool exact) const;

  bool is_zero(const Elem& a) const noexcept { return a.is_zero(); }
  // Equal at the common precision.
  bool equal(const Elem& a, const Elem& b) const { return sub(a, b).is_zero(); }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, std::int64_t e) const;
  Elem frobenius(const Elem& a) const;
  Elem pth_root(const Elem&) const;
  Elem truncate(const Elem& a, std::int64_t abs_prec) const;

  std::string to_string(const Elem& a) const;

 private:
  PrimeField fp_;
  std::int64_t rel_prec_;
};

LaurentSeries parse_laurent(std::string_view text, const LaurentField& field);

}  // namespace hasse
