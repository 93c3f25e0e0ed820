#include "hasse/prime_field.hpp"

#include "hasse/error.hpp"

namespace hasse {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p > (1u << 30)) {
    throw MathError(ErrorKind::InvalidArgument, "modulus " + std::to_string(p) + " is not a supported prime");
  }
}

PrimeFieldElem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

PrimeFieldElem PrimeField::inv(Elem a) const {
  if (a.value == 0) throw MathError(ErrorKind::DivisionByZero, "inverse of 0 in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

namespace {

std::uint32_t small_binomial(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  // den is a product of residues in [1, p), hence invertible.
  std::uint64_t inv = 1;
  std::uint64_t base = den;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(num * inv % p);
}

}  // namespace

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  while (n > 0 || k > 0) {
    auto nd = static_cast<std::uint32_t>(n % p);
    auto kd = static_cast<std::uint32_t>(k % p);
    if (kd > nd) return 0;
    r = r * small_binomial(nd, kd, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace hasse
