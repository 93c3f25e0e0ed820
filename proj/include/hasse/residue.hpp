#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hasse/laurent.hpp"
#include "hasse/tower_poly.hpp"

namespace hasse {

// K_M = L[theta_M] with L = k((X)), presented by the monic minimal
// polynomial Fmin of theta_M over L.  theta_m = theta_M^(p^(M-m)).
struct ResidueFieldCtx {
  PrimeField fp;
  LaurentField L;
  std::uint32_t m0 = 0;
  std::uint32_t M = 0;
  TowerPoly generator;               // F_{m0}, written in t_{m0}
  std::size_t d = 0;                 // degree of the generator
  std::vector<LaurentSeries> fmin;   // Fmin = T^D + sum_{i<D} fmin[i] T^i

  std::size_t degree() const noexcept { return fmin.size(); }
  // Exponent e with theta_m = theta_M^e.
  std::uint64_t theta_exponent(std::uint32_t m) const;
};

struct ResidueOptions {
  // Relative precision of L (digits kept when inverting inexact data).
  std::int64_t laurent_prec = 64;
  // Skip the bounded reducibility screen.
  bool assume_irreducible = false;
  // Require a coefficient equal to 1 and one that is not a p-th power.
  bool validate_generator = true;
  std::size_t max_degree = 6;
};

// Result of the bounded reducibility screen; empty when nothing was found.
std::optional<std::string> reducibility_witness(const std::vector<LaurentSeries>& coeffs, const LaurentField& L);

std::shared_ptr<const ResidueFieldCtx> residue_ctx_build(const TowerPoly& F, std::uint32_t M,
                                                         const ResidueOptions& opts = {});

struct ResidueElem {
  std::vector<LaurentSeries> coords;  // in the power basis of theta_M
  friend bool operator==(const ResidueElem&, const ResidueElem&) = default;
};

class ResidueField {
 public:
  using Elem = ResidueElem;

  explicit ResidueField(std::shared_ptr<const ResidueFieldCtx> ctx) : ctx_(std::move(ctx)) {}

  const ResidueFieldCtx& ctx() const noexcept { return *ctx_; }
  const LaurentField& laurent() const noexcept { return ctx_->L; }
  std::uint32_t characteristic() const noexcept { return ctx_->fp.characteristic(); }

  Elem zero() const;
  Elem one() const { return embed(ctx_->L.one()); }
  Elem from_int(std::int64_t v) const { return embed(ctx_->L.from_int(v)); }
  Elem embed(const LaurentSeries& a) const;
  Elem embed(const UniSeries& a, bool exact) const { return embed(ctx_->L.from_series(a, exact)); }
  Elem theta(std::uint32_t m) const;
  Elem theta_power(std::uint64_t e) const;

  // Reduction of an arbitrary polynomial in theta_M modulo Fmin.
  Elem reduce(std::vector<LaurentSeries> poly) const;
  // Class of sum_r a_r(X) t_m^r, by direct reduction of a(T^(p^(M-m))).
  Elem reduce_tower(const TowerPoly& a) const;

  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, std::uint64_t e) const;
  Elem frobenius(const Elem& a) const;
  Elem pth_root(const Elem&) const;

  // Lowest absolute X-precision over the coordinates.
  std::int64_t precision(const Elem& a) const;
  // Element of L if only the first coordinate can be nonzero.
  std::optional<LaurentSeries> as_laurent(const Elem& a) const;

  std::string to_string(const Elem& a) const;

 private:
  std::shared_ptr<const ResidueFieldCtx> ctx_;
};

}  // namespace hasse
