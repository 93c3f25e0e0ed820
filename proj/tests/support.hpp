#pragma once

#include <random>

#include "hasse/prime_field.hpp"
#include "hasse/residue.hpp"
#include "hasse/trunc_series.hpp"

namespace hasse::test {

// Random series over F_p: each monomial of degree in [min_order, prec) is
// present with the given probability, with a uniform nonzero coefficient.
inline TruncSeries<PrimeField> random_series(const PrimeField& f, std::size_t n, std::uint32_t prec,
                                             std::mt19937_64& rng, double density, std::uint32_t min_order = 0) {
  TruncSeries<PrimeField> s(f, n, prec);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<std::uint32_t> coef(1, f.characteristic() - 1);
  for (const auto& a : multi_indices_up_to(n, prec - 1)) {
    if (a.total() < min_order) continue;
    if (keep(rng)) s.add_term(a, {coef(rng)});
  }
  return s;
}

inline LaurentSeries random_laurent(const LaurentField& L, std::mt19937_64& rng, bool exact) {
  std::uniform_int_distribution<int> v(-3, 3);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<std::uint32_t> c(0, L.characteristic() - 1);
  std::vector<std::uint32_t> co(static_cast<std::size_t>(len(rng)));
  for (auto& x : co) x = c(rng);
  co[0] = 1 + c(rng) % (L.characteristic() - 1);
  const auto val = v(rng);
  const auto abs = exact ? kExactPrecision : val + static_cast<std::int64_t>(co.size()) + len(rng);
  return L.make(val, co, abs);
}

inline ResidueElem random_residue(const ResidueField& K, std::mt19937_64& rng) {
  auto r = K.zero();
  std::bernoulli_distribution keep(0.6);
  for (auto& c : r.coords) {
    if (keep(rng)) c = random_laurent(K.laurent(), rng, true);
  }
  return r;
}

}  // namespace hasse::test
