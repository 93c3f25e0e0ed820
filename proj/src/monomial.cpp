#include "hasse/monomial.hpp"

#include <algorithm>

#include "hasse/error.hpp"

namespace hasse {

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

namespace {

void enumerate(std::size_t n, std::size_t pos, std::uint32_t remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (std::uint32_t v = remaining + 1; v-- > 0;) {
    cur[pos] = v;
    enumerate(n, pos + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(std::size_t n, std::uint32_t max_total) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n);
  for (std::uint32_t d = 0; d <= max_total; ++d) enumerate(n, 0, d, cur, out);
  return out;
}

MonomialLayout::MonomialLayout(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0 || nvars > 8) {
    throw MathError(ErrorKind::InvalidArgument, "number of variables must be in [1, 8]");
  }
  bits_ = static_cast<unsigned>(std::min<std::size_t>(64 / nvars, 24));
  mask_ = (std::uint64_t{1} << bits_) - 1;
}

std::uint64_t MonomialLayout::pack(const MultiIndex& a) const {
  if (a.size() != nvars_) throw MathError(ErrorKind::DimensionMismatch, "multi-index arity mismatch");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (a[i] > mask_) throw MathError(ErrorKind::InvalidArgument, "exponent too large for packed monomial");
    key |= std::uint64_t{a[i]} << shift(i);
  }
  return key;
}

MultiIndex MonomialLayout::unpack(std::uint64_t key) const {
  MultiIndex a(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) a[i] = exponent(key, i);
  return a;
}

}  // namespace hasse
