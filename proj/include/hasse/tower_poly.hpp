#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hasse/prime_field.hpp"
#include "hasse/trunc_series.hpp"

namespace hasse {

using UniSeries = TruncSeries<PrimeField>;

// X-precision used for polynomial literals.  Literals are exact; this only
// bounds their X-degree.
inline constexpr std::uint32_t kPolyPrec = 4096;

// sum_r coeffs[r](X) * t_level^r with t_level = t^(1/p^level).
//
// exact: every coefficient is a polynomial (not a truncated series).
struct TowerPoly {
  std::uint32_t level = 0;
  std::vector<UniSeries> coeffs;
  bool exact = true;

  // Index of the highest nonzero coefficient; -1 for the zero polynomial.
  int degree() const {
    for (auto r = static_cast<int>(coeffs.size()) - 1; r >= 0; --r) {
      if (!coeffs[static_cast<std::size_t>(r)].is_zero()) return r;
    }
    return -1;
  }
};

TowerPoly tower_trim(TowerPoly f);
// Same element written in t_m for m >= f.level: t_l^r = t_m^(r p^(m-l)).
TowerPoly tower_lift(const TowerPoly& f, std::uint32_t m);
TowerPoly tower_add(const TowerPoly& a, const TowerPoly& b);
TowerPoly tower_sub(const TowerPoly& a, const TowerPoly& b);
TowerPoly tower_mul(const TowerPoly& a, const TowerPoly& b);
TowerPoly tower_scale(const TowerPoly& a, PrimeFieldElem c);
bool tower_equal(const TowerPoly& a, const TowerPoly& b);

// Polynomial in t (or t^(1/p^m)) and X over F_p.  Mixed levels are lifted
// to the deepest one.  Division is allowed by nonzero constants only.
TowerPoly parse_tower_poly(std::string_view text, const PrimeField& field);

std::string to_string(const TowerPoly& f);

}  // namespace hasse
