#pragma once

#include <cstdint>
#include <string>

#include "hasse/fp_poly.hpp"
#include "hasse/prime_field.hpp"

namespace hasse {

// An element of F_p(t^(1/p^level)) written as num(u)/den(u) with
// u = t^(1/p^level).  Always kept canonical: gcd(num, den) = 1, den monic,
// and level minimal.
struct PerfClosureElem {
  std::uint32_t level = 0;
  FpPoly num;
  FpPoly den = FpPoly::constant(1);

  friend bool operator==(const PerfClosureElem&, const PerfClosureElem&) = default;
};

// The perfect closure k_inf = union over m of F_p(t^(1/p^m)).
class PerfectClosure {
 public:
  using Elem = PerfClosureElem;

  explicit PerfectClosure(std::uint32_t p) : fp_(p) {}
  explicit PerfectClosure(const PrimeField& fp) : fp_(fp) {}

  const PrimeField& base() const noexcept { return fp_; }
  std::uint32_t characteristic() const noexcept { return fp_.characteristic(); }

  Elem zero() const { return {0, FpPoly{}, FpPoly::constant(1)}; }
  Elem one() const { return from_int(1); }
  Elem from_int(std::int64_t v) const { return {0, FpPoly::constant(fp_.from_int(v).value), FpPoly::constant(1)}; }
  // t_m = t^(1/p^m).
  Elem t(std::uint32_t m) const;

  bool is_zero(const Elem& a) const noexcept { return a.num.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const noexcept { return a == b; }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, std::int64_t e) const;

  Elem frobenius(const Elem& a) const;
  Elem pth_root(const Elem& a) const;

  // Same element rewritten at a higher level (not canonical).
  Elem lift(const Elem& a, std::uint32_t level) const;
  Elem canonicalize(Elem a) const;

  std::string to_string(const Elem& a) const;

 private:
  Elem make(std::uint32_t level, FpPoly num, FpPoly den) const;
  PrimeField fp_;
};

std::string tower_token(std::uint32_t p, std::uint32_t m);

}  // namespace hasse
