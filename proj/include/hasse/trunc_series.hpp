#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hasse/error.hpp"
#include "hasse/monomial.hpp"

namespace hasse {

// Sparse multivariate power series truncated by (weighted) degree.
//
// Terms of degree >= prec are never stored, and neither are zero
// coefficients.  The grading is total degree unless explicit weights are
// given; weights are only used internally by Weierstrass division, where
// the total-degree filtration is not the one in which division converges.
//
// Terms are kept sorted by degree ascending, then lexicographically with
// X1 > X2 > ... (graded-lex), so iteration and printing are deterministic.
template <class Ring>
class TruncSeries {
 public:
  using Elem = typename Ring::Elem;

  struct Term {
    std::uint64_t key;
    std::uint32_t deg;
    Elem coeff;
  };

  TruncSeries(Ring ring, std::size_t nvars, std::uint32_t prec, std::vector<std::uint32_t> weights = {})
      : ring_(std::move(ring)), layout_(nvars), prec_(prec), weights_(std::move(weights)) {
    if (weights_.empty()) weights_.assign(nvars, 1);
    if (weights_.size() != nvars) throw MathError(ErrorKind::DimensionMismatch, "weight vector arity");
    for (auto w : weights_) {
      if (w == 0) throw MathError(ErrorKind::InvalidArgument, "grading weights must be positive");
    }
    if (prec == 0) throw MathError(ErrorKind::InvalidArgument, "precision must be at least 1");
    if (prec - 1 > layout_.max_exponent()) throw MathError(ErrorKind::InvalidArgument, "precision too large for this arity");
  }

  static TruncSeries constant(Ring ring, std::size_t nvars, std::uint32_t prec, const Elem& c) {
    TruncSeries s(std::move(ring), nvars, prec);
    s.add_term(MultiIndex(nvars), c);
    return s;
  }
  static TruncSeries variable(Ring ring, std::size_t nvars, std::uint32_t prec, std::size_t j) {
    auto one = ring.one();
    TruncSeries s(std::move(ring), nvars, prec);
    s.add_term(MultiIndex::unit(nvars, j, 1), one);
    return s;
  }
  static TruncSeries monomial(Ring ring, std::size_t nvars, std::uint32_t prec, const MultiIndex& a, const Elem& c) {
    TruncSeries s(std::move(ring), nvars, prec);
    s.add_term(a, c);
    return s;
  }

  // Same ring, arity, precision and grading; no terms.
  TruncSeries zero_like() const { return TruncSeries(ring_, nvars(), prec_, weights_); }
  TruncSeries constant_like(const Elem& c) const {
    auto s = zero_like();
    s.add_term(MultiIndex(nvars()), c);
    return s;
  }

  const Ring& ring() const noexcept { return ring_; }
  const MonomialLayout& layout() const noexcept { return layout_; }
  std::size_t nvars() const noexcept { return layout_.nvars(); }
  std::uint32_t prec() const noexcept { return prec_; }
  const std::vector<std::uint32_t>& weights() const noexcept { return weights_; }
  bool standard_grading() const noexcept {
    return std::all_of(weights_.begin(), weights_.end(), [](auto w) { return w == 1; });
  }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::uint32_t degree_of(std::uint64_t key) const noexcept {
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < nvars(); ++i) d += weights_[i] * layout_.exponent(key, i);
    return d;
  }
  MultiIndex exponents(const Term& t) const { return layout_.unpack(t.key); }

  Elem coeff(const MultiIndex& a) const {
    const auto key = layout_.pack(a);
    for (const auto& t : terms_) {
      if (t.key == key) return t.coeff;
    }
    return ring_.zero();
  }
  Elem constant_term() const {
    if (!terms_.empty() && terms_.front().key == 0) return terms_.front().coeff;
    return ring_.zero();
  }

  // Minimal degree of a nonzero term; nullopt if zero at this precision.
  std::optional<std::uint32_t> order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().deg;
  }

  // Adds c*X^a into the series (accumulating); ignored beyond precision.
  void add_term(const MultiIndex& a, const Elem& c) { add_key(layout_.pack(a), c); }
  void add_key(std::uint64_t key, const Elem& c) {
    const auto d = degree_of(key);
    if (d >= prec_ || ring_.is_zero(c)) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{d, key}, [](const Term& t, const auto& v) {
      return t.deg != v.first ? t.deg < v.first : t.key > v.second;
    });
    if (it != terms_.end() && it->key == key) {
      it->coeff = ring_.add(it->coeff, c);
      if (ring_.is_zero(it->coeff)) terms_.erase(it);
      return;
    }
    terms_.insert(it, Term{key, d, c});
  }

  // Rebuilds from an unordered key->coeff accumulation.
  template <class Map>
  void assign_from(const Map& acc) {
    terms_.clear();
    terms_.reserve(acc.size());
    for (const auto& [key, c] : acc) {
      const auto d = degree_of(key);
      if (d < prec_ && !ring_.is_zero(c)) terms_.push_back(Term{key, d, c});
    }
    sort_terms();
  }

  TruncSeries truncated(std::uint32_t new_prec) const {
    TruncSeries r(ring_, nvars(), std::min(new_prec, prec_), weights_);
    for (const auto& t : terms_) {
      if (t.deg < r.prec_) r.terms_.push_back(t);
    }
    return r;
  }
  // Relabels the precision without touching terms (used when the caller
  // knows more digits are valid, e.g. for polynomials).
  TruncSeries with_prec(std::uint32_t new_prec) const {
    TruncSeries r(ring_, nvars(), new_prec, weights_);
    for (const auto& t : terms_) {
      if (t.deg < new_prec) r.terms_.push_back(t);
    }
    return r;
  }
  TruncSeries with_weights(std::vector<std::uint32_t> w, std::uint32_t new_prec) const {
    TruncSeries r(ring_, nvars(), new_prec, std::move(w));
    for (const auto& t : terms_) r.add_key(t.key, t.coeff);
    return r;
  }

  // Exact equality of the stored data below the common precision.
  bool equals(const TruncSeries& o) const { return equal_below(o, std::min(prec_, o.prec_)); }
  bool equal_below(const TruncSeries& o, std::uint32_t bound) const {
    auto a = truncated_terms(bound);
    auto b = o.truncated_terms(bound);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].key != b[i].key || !ring_.equal(a[i].coeff, b[i].coeff)) return false;
    }
    return true;
  }

 private:
  std::vector<Term> truncated_terms(std::uint32_t bound) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.deg < bound) out.push_back(t);
    }
    return out;
  }
  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.deg != b.deg ? a.deg < b.deg : a.key > b.key; });
  }

  template <class R>
  friend class TruncSeries;
  template <class R>
  friend TruncSeries<R> add(const TruncSeries<R>&, const TruncSeries<R>&);
  template <class R>
  friend TruncSeries<R> mul_serial(const TruncSeries<R>&, const TruncSeries<R>&);
  template <class R>
  friend TruncSeries<R> mul(const TruncSeries<R>&, const TruncSeries<R>&);

  Ring ring_;
  MonomialLayout layout_;
  std::uint32_t prec_;
  std::vector<std::uint32_t> weights_;
  std::vector<Term> terms_;
};

namespace detail {

template <class R>
void check_compatible(const TruncSeries<R>& f, const TruncSeries<R>& g) {
  if (f.nvars() != g.nvars() || f.weights() != g.weights()) {
    throw MathError(ErrorKind::DimensionMismatch, "series with different arity or grading");
  }
}

template <class R>
using Accumulator = std::unordered_map<std::uint64_t, typename R::Elem>;

// Accumulates a[lo, hi) * b into acc, skipping products at or beyond prec.
template <class R>
void mul_block(const R& ring, std::span<const typename TruncSeries<R>::Term> a,
               std::span<const typename TruncSeries<R>::Term> b, std::uint32_t prec, Accumulator<R>& acc) {
  if (b.empty()) return;
  const auto bmin = b.front().deg;
  for (const auto& x : a) {
    if (x.deg + bmin >= prec) break;
    for (const auto& y : b) {
      if (x.deg + y.deg >= prec) break;
      auto prod = ring.mul(x.coeff, y.coeff);
      auto [it, fresh] = acc.try_emplace(x.key + y.key, prod);
      if (!fresh) it->second = ring.add(it->second, prod);
    }
  }
}

}  // namespace detail

template <class R>
TruncSeries<R> add(const TruncSeries<R>& f, const TruncSeries<R>& g) {
  detail::check_compatible(f, g);
  TruncSeries<R> r(f.ring(), f.nvars(), std::min(f.prec(), g.prec()), f.weights());
  const auto& a = f.terms_;
  const auto& b = g.terms_;
  auto before = [](const auto& x, const auto& y) { return x.deg != y.deg ? x.deg < y.deg : x.key > y.key; };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    typename TruncSeries<R>::Term t;
    if (j == b.size() || (i < a.size() && before(a[i], b[j]))) {
      t = a[i++];
    } else if (i == a.size() || before(b[j], a[i])) {
      t = b[j++];
    } else {
      t = a[i];
      t.coeff = f.ring().add(a[i++].coeff, b[j++].coeff);
      if (f.ring().is_zero(t.coeff)) continue;
    }
    if (t.deg >= r.prec_) break;
    r.terms_.push_back(std::move(t));
  }
  return r;
}

template <class R>
TruncSeries<R> neg(const TruncSeries<R>& f) {
  auto r = f.zero_like();
  for (const auto& t : f.terms()) r.add_key(t.key, f.ring().neg(t.coeff));
  return r;
}

template <class R>
TruncSeries<R> sub(const TruncSeries<R>& f, const TruncSeries<R>& g) {
  return add(f, neg(g));
}

template <class R>
TruncSeries<R> scale(const TruncSeries<R>& f, const typename R::Elem& c) {
  auto r = f.zero_like();
  for (const auto& t : f.terms()) r.add_key(t.key, f.ring().mul(c, t.coeff));
  return r;
}

// Reference product: sparse schoolbook with the degree cutoff, one thread.
template <class R>
TruncSeries<R> mul_serial(const TruncSeries<R>& f, const TruncSeries<R>& g) {
  detail::check_compatible(f, g);
  TruncSeries<R> r(f.ring(), f.nvars(), std::min(f.prec(), g.prec()), f.weights());
  detail::Accumulator<R> acc;
  detail::mul_block(f.ring(), std::span(f.terms_), std::span(g.terms_), r.prec(), acc);
  r.assign_from(acc);
  return r;
}

// Below this many candidate coefficient products the thread fan-out costs
// more than it saves.
inline constexpr std::size_t kParallelMulThreshold = 1u << 14;

// OpenMP product.  The left operand is cut into contiguous blocks, each
// block accumulates privately, and the partial sums are merged in block
// order.  Coefficient arithmetic is exact, so the result does not depend on
// the number of threads.
template <class R>
TruncSeries<R> mul(const TruncSeries<R>& f, const TruncSeries<R>& g) {
  detail::check_compatible(f, g);
#ifdef _OPENMP
  const auto work = f.size() * g.size();
  const int threads = omp_get_max_threads();
  if (threads <= 1 || work < kParallelMulThreshold || f.size() < 2) return mul_serial(f, g);
  TruncSeries<R> r(f.ring(), f.nvars(), std::min(f.prec(), g.prec()), f.weights());
  const auto nblocks = static_cast<std::size_t>(std::min<std::size_t>(f.size(), static_cast<std::size_t>(threads) * 4));
  std::vector<detail::Accumulator<R>> partial(nblocks);
  std::span<const typename TruncSeries<R>::Term> lhs(f.terms_);
  std::span<const typename TruncSeries<R>::Term> rhs(g.terms_);
  const auto n = lhs.size();
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t b = 0; b < nblocks; ++b) {
    // Strided blocks balance the work: low-degree terms have the most partners.
    std::vector<typename TruncSeries<R>::Term> mine;
    for (std::size_t i = b; i < n; i += nblocks) mine.push_back(lhs[i]);
    detail::mul_block(f.ring(), std::span<const typename TruncSeries<R>::Term>(mine), rhs, r.prec(), partial[b]);
  }
  auto& acc = partial.front();
  for (std::size_t b = 1; b < nblocks; ++b) {
    for (auto& [key, c] : partial[b]) {
      auto [it, fresh] = acc.try_emplace(key, c);
      if (!fresh) it->second = f.ring().add(it->second, c);
    }
  }
  r.assign_from(acc);
  return r;
#else
  return mul_serial(f, g);
#endif
}

template <class R>
TruncSeries<R> pow(const TruncSeries<R>& f, std::uint64_t e) {
  auto r = f.constant_like(f.ring().one());
  auto base = f;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

template <class R>
TruncSeries<R> operator+(const TruncSeries<R>& f, const TruncSeries<R>& g) { return add(f, g); }
template <class R>
TruncSeries<R> operator-(const TruncSeries<R>& f, const TruncSeries<R>& g) { return sub(f, g); }
template <class R>
TruncSeries<R> operator-(const TruncSeries<R>& f) { return neg(f); }
template <class R>
TruncSeries<R> operator*(const TruncSeries<R>& f, const TruncSeries<R>& g) { return mul(f, g); }

// Coefficient-wise change of ring.
template <class R2, class R1, class Fn>
TruncSeries<R2> map_coeffs(const TruncSeries<R1>& f, const R2& ring, Fn&& fn) {
  TruncSeries<R2> r(ring, f.nvars(), f.prec(), f.weights());
  for (const auto& t : f.terms()) r.add_key(t.key, fn(t.coeff));
  return r;
}

template <class R>
std::vector<std::string> default_var_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
  return names;
}

// Graded-lex rendering, e.g. "1 + X1*X2^3 + 2*X2^2".
template <class R>
std::string to_string(const TruncSeries<R>& f, const std::vector<std::string>& names = {}) {
  const auto vars = names.empty() ? default_var_names<R>(f.nvars()) : names;
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      const auto e = f.layout().exponent(t.key, i);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    auto c = f.ring().to_string(t.coeff);
    const bool simple = c.find_first_of(" +/") == std::string::npos;
    if (!out.empty()) out += " + ";
    if (mono.empty()) {
      out += c;
    } else if (f.ring().equal(t.coeff, f.ring().one())) {
      out += mono;
    } else {
      out += (simple ? c : "(" + c + ")") + "*" + mono;
    }
  }
  return out;
}

}  // namespace hasse
