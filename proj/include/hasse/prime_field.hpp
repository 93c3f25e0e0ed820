#pragma once

#include <cstdint>
#include <string>

namespace hasse {

struct PrimeFieldElem {
  std::uint32_t value = 0;

  friend bool operator==(PrimeFieldElem, PrimeFieldElem) = default;
};

bool is_prime(std::uint64_t n);

// The field F_p.  The modulus lives here, not in the elements.
class PrimeField {
 public:
  using Elem = PrimeFieldElem;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const noexcept { return p_; }

  Elem zero() const noexcept { return {0}; }
  Elem one() const noexcept { return {1}; }
  Elem from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
  }

  bool is_zero(Elem a) const noexcept { return a.value == 0; }
  bool is_one(Elem a) const noexcept { return a.value == 1; }
  bool equal(Elem a, Elem b) const noexcept { return a.value == b.value; }

  Elem add(Elem a, Elem b) const noexcept {
    std::uint32_t s = a.value + b.value;
    return {s >= p_ ? s - p_ : s};
  }
  Elem sub(Elem a, Elem b) const noexcept {
    return {a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }
  Elem neg(Elem a) const noexcept { return {a.value == 0 ? 0 : p_ - a.value}; }
  Elem mul(Elem a, Elem b) const noexcept {
    return {static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p_)};
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  Elem inv(Elem a) const;  // throws DivisionByZero on 0

  // x -> x^p is the identity on F_p, so the p-th root is too.
  Elem frobenius(Elem a) const noexcept { return a; }
  Elem pth_root(Elem a) const noexcept { return a; }

  std::string to_string(Elem a) const { return std::to_string(a.value); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

// binom(n, k) mod p by Lucas' theorem.
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

}  // namespace hasse
