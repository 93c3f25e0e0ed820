#pragma once

#include <cstdint>
#include <vector>

#include "hasse/monomial.hpp"
#include "hasse/prime_field.hpp"
#include "hasse/trunc_series.hpp"

namespace hasse {

using Series = TruncSeries<PrimeField>;

// Componentwise-minimal exponents of the support of f, in graded-lex order.
std::vector<MultiIndex> newton_min_set(const Series& f);

struct SigmaChoice {
  std::vector<std::uint32_t> sigma;  // sigma_1 .. sigma_{n-1}; 0 means no shift
  bool p_multiples = false;
};

// L_sigma(a) = sigma_1 a_1 + ... + sigma_{n-1} a_{n-1} + a_n.
std::uint64_t linear_form(const std::vector<std::uint32_t>& sigma, const MultiIndex& a);

// First sigma (sigma_{n-1} ascending, then each earlier entry ascending
// through multiples of the next) with L_sigma injective on F.
SigmaChoice select_sigma(const std::vector<MultiIndex>& F, std::size_t n, std::uint32_t p, bool p_multiples);

struct DistinguishOptions {
  bool p_multiples = false;
  // Shift even when f is already X_n-distinguished.
  bool always_shift = false;
};

struct Distinguished {
  Series g;
  SigmaChoice sigma;
  std::vector<MultiIndex> newton;
  std::uint32_t order = 0;  // ord of g(0, ..., 0, X_n)
};

Distinguished distinguish(const Series& f, const DistinguishOptions& opts = {});

struct WeierstrassDivision {
  Series quot;
  Series rem;  // X_n-degree < q
};

// f = quot * g + rem modulo total degree min(prec f, prec g).  Both inputs
// are read as the polynomials given by their stored terms.  q is the X_n
// order of g(0, ..., 0, X_n); pass 0 to have it computed.
WeierstrassDivision weierstrass_divide(const Series& f, const Series& g, std::uint32_t q = 0);

struct WeierstrassFactorization {
  std::uint32_t q = 0;
  Series unit;
  Series H;                    // X_n^q + a_{q-1} X_n^{q-1} + ... + a_0
  std::vector<Series> lower;   // a_0 .. a_{q-1} in X_1..X_{n-1}; empty when n = 1
};

WeierstrassFactorization weierstrass_prepare(const Series& g);

}  // namespace hasse
