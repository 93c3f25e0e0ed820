#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hasse/weierstrass.hpp"

namespace hasse {

// One coordinate change on the first `active` variables: the variables
// are permuted (new X_i is old X_perm[i]), then X_j is replaced by
// X_j + shifts[j] for j < active - 1.  Each shift is a power of
// X_{active} with exponent sigma_j (zero means no shift).
struct CoordLayer {
  std::size_t active = 0;
  std::vector<std::size_t> perm;
  std::vector<std::uint32_t> sigma;
  std::vector<Series> shifts;
};

struct CoordChange {
  std::size_t nvars = 0;
  std::vector<CoordLayer> layers;
};

// f after every layer of the change, in order.
Series apply_change(const CoordChange& change, const Series& f);

// Determinant of a square matrix of series, without divisions.
Series series_determinant(const std::vector<std::vector<Series>>& m);

struct Separability {
  bool separable = false;
  std::optional<Series> resultant;  // Res_T(H, dH/dT); absent for a univariate H
  std::string certificate;          // lowest term of the resultant, or "0"
};

// H monic of degree q in its last variable.
Separability separability_check(const Series& H, std::uint32_t q);

struct NormalizationLevel {
  std::size_t active = 0;           // number of variables at this level
  WeierstrassFactorization witness; // in the coordinates after this level's layer
  Separability separability;
};

struct NormalizationResult {
  std::size_t e = 0;
  CoordChange change;
  std::vector<NormalizationLevel> levels;
  bool separable = false;
  // Every (permutation, sigma) tried by the separability search, with the
  // certificate it produced.
  std::vector<std::string> attempts;
};

struct NormalizeOptions {
  bool ensure_separable = false;
  bool p_multiples = true;
  // Extra sigma scalings tried per permutation by the separability search.
  std::uint32_t sigma_budget = 4;
};

NormalizationResult normalize_principal(const Series& f, const NormalizeOptions& opts = {});
NormalizationResult normalize_ideal(const std::vector<Series>& gens, const NormalizeOptions& opts = {});

}  // namespace hasse
