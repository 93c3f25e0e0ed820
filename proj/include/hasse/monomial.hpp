#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hasse {

// An exponent vector alpha in N^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e_(n, 0) {}
  MultiIndex(std::initializer_list<std::uint32_t> e) : e_(e) {}
  explicit MultiIndex(std::vector<std::uint32_t> e) : e_(std::move(e)) {}

  static MultiIndex unit(std::size_t n, std::size_t j, std::uint32_t i) {
    MultiIndex a(n);
    a[j] = i;
    return a;
  }

  std::size_t size() const noexcept { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }
  std::uint64_t total() const noexcept {
    std::uint64_t s = 0;
    for (auto x : e_) s += x;
    return s;
  }
  // Componentwise order.
  bool leq(const MultiIndex& o) const noexcept {
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] > o.e_[i]) return false;
    }
    return true;
  }
  const std::vector<std::uint32_t>& values() const noexcept { return e_; }
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<std::uint32_t> e_;
};

// All alpha in N^n with |alpha| <= max_total, in graded order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t n, std::uint32_t max_total);

// Packs exponent vectors of a fixed arity into 64-bit keys.  X1 occupies the
// most significant field, so integer order on keys of equal degree is
// lexicographic order on exponents.
class MonomialLayout {
 public:
  explicit MonomialLayout(std::size_t nvars);

  std::size_t nvars() const noexcept { return nvars_; }
  std::uint32_t max_exponent() const noexcept { return static_cast<std::uint32_t>(mask_); }

  std::uint64_t pack(const MultiIndex& a) const;
  MultiIndex unpack(std::uint64_t key) const;
  std::uint32_t exponent(std::uint64_t key, std::size_t i) const noexcept {
    return static_cast<std::uint32_t>((key >> shift(i)) & mask_);
  }
  std::uint64_t unit(std::size_t i, std::uint32_t e) const noexcept { return std::uint64_t{e} << shift(i); }
  bool divides(std::uint64_t a, std::uint64_t b) const noexcept {
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (exponent(a, i) > exponent(b, i)) return false;
    }
    return true;
  }

  friend bool operator==(const MonomialLayout&, const MonomialLayout&) = default;

 private:
  unsigned shift(std::size_t i) const noexcept { return static_cast<unsigned>(bits_ * (nvars_ - 1 - i)); }

  std::size_t nvars_;
  unsigned bits_;
  std::uint64_t mask_;
};

}  // namespace hasse
