#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hasse/residue.hpp"
#include "hasse/tower_poly.hpp"

namespace hasse {

// Series in s over the residue field; elements of the completion are
// handled through their images under phi.
using KSeries = TruncSeries<ResidueField>;

struct MaxIdealSpec {
  std::uint32_t p = 0;
  TowerPoly input;
  std::uint32_t m0 = 0;
  TowerPoly mu;        // descended generator, written in t_{m0}, with a coefficient equal to 1
  std::size_t d = 0;
  std::uint32_t descent_steps = 0;
};

struct FindM0Options {
  bool lock_level = false;
  std::uint32_t max_descent = 8;
  // X-precision used when a non-constant unit coefficient has to be
  // divided out.
  std::uint32_t unit_prec = 64;
};

MaxIdealSpec find_m0(const TowerPoly& F, const FindM0Options& opts = {});

struct CohenIso {
  MaxIdealSpec spec;
  ResidueField K;
  std::uint32_t N = 0;
  KSeries xi;
  KSeries psi;                  // compositional inverse of xi
  std::vector<KSeries> xi_pow;  // xi^0 .. xi^(N-1)
};

struct CohenOptions {
  ResidueOptions residue;
  // Skip the generator validation of the residue context (used to exhibit
  // the failure at a level where every coefficient is a p-th power).
  bool unchecked = false;
};

// G(s, sigma) = sum_r a_r(X + sigma) theta_{m0}^r - s over K_M.
KSeries cohen_equation(const MaxIdealSpec& spec, const ResidueField& K, std::uint32_t N);

CohenIso build_cohen(const MaxIdealSpec& spec, std::uint32_t M, std::uint32_t N, const CohenOptions& opts = {});

// phi(sum_r g_r(X) t_m^r) = sum_r (sum_i Delta_i(g_r)(Xbar) xi^i) theta_m^r mod s^N.
KSeries phi_eval(const CohenIso& iso, const TowerPoly& a);
KSeries phi_eval(const CohenIso& iso, const UniSeries& a);

// Delta_i in the coordinate xi, applied to an element of K[[s]].
KSeries hs_xi(const CohenIso& iso, const KSeries& F, std::uint32_t i);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::uint32_t certified_degree = 0;
  std::string detail;
};

// phi(Delta_i(a)) = Delta_i^xi(phi(a)) for 1 <= i < i_max.
std::vector<CheckResult> check_relation2(const CohenIso& iso, const UniSeries& a, std::uint32_t i_max);

// phi(mu) = s.
CheckResult check_defining_identity(const CohenIso& iso);

// The matrix (Delta_i^xi(s^k))(0) for 1 <= i, k < N is triangular with a
// nonzero diagonal, so only constants are annihilated by every Delta_i^xi.
CheckResult check_flatness_kernel(const CohenIso& iso);

// Lifts of the samples are flat, have the right residues, and are closed
// under sums and products.
std::vector<CheckResult> coefficient_field_check(const CohenIso& iso, const std::vector<ResidueElem>& samples);

// s = 0 specialization of phi(a) against the class of a in K.
CheckResult check_residue_compat(const CohenIso& iso, const TowerPoly& a);

// phi(a b) = phi(a) phi(b).
CheckResult check_multiplicative(const CohenIso& iso, const TowerPoly& a, const TowerPoly& b);

struct CounterexampleReport {
  std::uint32_t p = 0;
  std::string locked_error;          // error kind raised by find_m0 under lock_level
  std::string level0_error;          // error kind raised by the solver at level 0
  bool level0_derivative_zero = false;
  std::uint32_t m0 = 0;
  std::string mu_eff;
  bool pipeline_ok = false;
  std::vector<CheckResult> checks;
};

CounterexampleReport counterexample_demo(std::uint32_t p, std::uint32_t N = 8);

}  // namespace hasse
