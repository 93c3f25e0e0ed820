#include "hasse/coeffield.hpp"

#include <algorithm>

#include "hasse/error.hpp"
#include "hasse/implicit.hpp"
#include "hasse/series_ops.hpp"

namespace hasse {

namespace {

bool is_constant_unit(const UniSeries& c) { return c.size() == 1 && c.terms()[0].deg == 0; }

// Divides F by one of its unit coefficients so that coefficient becomes 1.
// A constant unit is preferred since it keeps the coefficients exact.
TowerPoly normalize_unit(TowerPoly F, std::uint32_t unit_prec) {
  const auto& fp = F.coeffs[0].ring();
  std::optional<std::size_t> unit, constant;
  for (std::size_t r = 0; r < F.coeffs.size(); ++r) {
    if (fp.is_zero(F.coeffs[r].constant_term())) continue;
    if (!unit) unit = r;
    if (!constant && is_constant_unit(F.coeffs[r])) constant = r;
  }
  if (!unit) throw MathError(ErrorKind::NoUnitCoefficient, "no coefficient is a unit of k[[X]]");
  if (constant) return tower_scale(F, fp.inv(F.coeffs[*constant].constant_term()));
  const auto inv = invert_unit(F.coeffs[*unit].truncated(unit_prec));
  for (auto& c : F.coeffs) c = mul(c.truncated(unit_prec), inv);
  F.exact = false;
  return F;
}

// Delta_i(g) embedded in K.  Digits of a truncated g at degree >= prec - i
// are not determined.
ResidueElem embed_delta(const ResidueField& K, const UniSeries& g, std::uint32_t i, bool exact) {
  auto d = delta_ij(g, 0, i);
  if (!exact) {
    if (g.prec() <= i) throw MathError(ErrorKind::PrecisionTooLow, "coefficient X-precision below the s-precision");
    d = d.truncated(g.prec() - i);
  }
  return K.embed(d, exact);
}

KSeries constant_series(const ResidueField& K, std::uint32_t N, const ResidueElem& c) {
  return KSeries::constant(K, 1, N, c);
}

bool vanishes(const KSeries& s, std::uint32_t bound) {
  for (const auto& t : s.terms()) {
    if (t.deg < bound && !s.ring().is_zero(t.coeff)) return false;
  }
  return true;
}

}  // namespace

MaxIdealSpec find_m0(const TowerPoly& F0, const FindM0Options& opts) {
  auto F = tower_trim(F0);
  if (F.degree() < 1) throw MathError(ErrorKind::InvalidArgument, "generator must have positive degree in t");
  const auto p = F.coeffs[0].ring().characteristic();
  MaxIdealSpec spec{p, F, F.level, {}, static_cast<std::size_t>(F.degree()), 0};
  F = normalize_unit(std::move(F), opts.unit_prec);
  auto all_powers = [](const TowerPoly& f) {
    return std::none_of(f.coeffs.begin(), f.coeffs.end(), [](const UniSeries& c) { return pth_power_witness(c).has_value(); });
  };
  // sum b_r^p t_m^r = (sum b_r t_{m+1}^r)^p, so the ideal is unchanged.
  while (all_powers(F)) {
    if (opts.lock_level) {
      throw MathError(ErrorKind::AllCoefficientsPthPowers,
                      "every coefficient is a p-th power at level " + std::to_string(F.level) + " and the level is locked");
    }
    if (spec.descent_steps == opts.max_descent) {
      throw MathError(ErrorKind::AllCoefficientsPthPowers,
                      "still all p-th powers after " + std::to_string(opts.max_descent) + " descents");
    }
    for (auto& c : F.coeffs) {
      c = pth_root(c);
      if (F.exact) c = c.with_prec(kPolyPrec);
    }
    ++F.level;
    ++spec.descent_steps;
  }
  spec.m0 = F.level;
  spec.mu = std::move(F);
  return spec;
}

KSeries cohen_equation(const MaxIdealSpec& spec, const ResidueField& K, std::uint32_t N) {
  const auto theta = K.theta(spec.m0);
  std::vector<ResidueElem> tpow{K.one()};
  for (std::size_t r = 1; r < spec.mu.coeffs.size(); ++r) tpow.push_back(K.mul(tpow.back(), theta));
  KSeries G(K, 2, N);
  // a_r(X + sigma) = sum_i Delta_i(a_r)(X) sigma^i.
  for (std::uint32_t i = 0; i < N; ++i) {
    auto c = K.zero();
    for (std::size_t r = 0; r < spec.mu.coeffs.size(); ++r) {
      const auto& a = spec.mu.coeffs[r];
      if (a.is_zero()) continue;
      c = K.add(c, K.mul(embed_delta(K, a, i, spec.mu.exact), tpow[r]));
    }
    G.add_term(MultiIndex{0, i}, c);
  }
  G.add_term(MultiIndex{1, 0}, K.neg(K.one()));
  return G;
}

CohenIso build_cohen(const MaxIdealSpec& spec, std::uint32_t M, std::uint32_t N, const CohenOptions& opts) {
  if (M < spec.m0) {
    throw MathError(ErrorKind::LevelExceedsContext,
                    "working level " + std::to_string(M) + " is below m0 = " + std::to_string(spec.m0));
  }
  if (N < 2) throw MathError(ErrorKind::InvalidArgument, "s-precision must be at least 2");
  auto ro = opts.residue;
  if (opts.unchecked) ro.validate_generator = false;
  ResidueField K(residue_ctx_build(spec.mu, M, ro));
  const auto G = cohen_equation(spec, K, N);
  auto xi = implicit_solve(G, N);
  auto psi = revert(xi, N);
  std::vector<KSeries> pw{constant_series(K, N, K.one())};
  for (std::uint32_t i = 1; i < N; ++i) pw.push_back(mul(pw.back(), xi));
  return CohenIso{spec, K, N, std::move(xi), std::move(psi), std::move(pw)};
}

KSeries phi_eval(const CohenIso& iso, const TowerPoly& a) {
  const auto& K = iso.K;
  const auto theta = K.theta(a.level);
  KSeries out(K, 1, iso.N);
  auto tp = K.one();
  for (std::size_t r = 0; r < a.coeffs.size(); ++r) {
    if (r > 0) tp = K.mul(tp, theta);
    const auto& g = a.coeffs[r];
    if (g.is_zero()) continue;
    if (!a.exact && g.prec() < iso.N) {
      throw MathError(ErrorKind::PrecisionTooLow, "coefficient known below X^" + std::to_string(g.prec()) +
                                                      ", need " + std::to_string(iso.N));
    }
    // Delta_i vanishes once i exceeds the X-degree of g.
    const auto top = std::min<std::uint32_t>(iso.N, var_degree(g, 0) + 1);
    KSeries inner(K, 1, iso.N);
    for (std::uint32_t i = 0; i < top; ++i) {
      const auto c = embed_delta(K, g, i, a.exact);
      if (!K.is_zero(c)) inner = add(inner, scale(iso.xi_pow[i], c));
    }
    out = add(out, scale(inner, tp));
  }
  return out;
}

// Univariate inputs are read as the polynomial given by their stored terms.
KSeries phi_eval(const CohenIso& iso, const UniSeries& a) {
  return phi_eval(iso, TowerPoly{0, {a.with_prec(kPolyPrec)}, true});
}

KSeries hs_xi(const CohenIso& iso, const KSeries& F, std::uint32_t i) {
  if (i == 0) return F;
  const auto P = std::min(F.prec(), iso.N);
  if (i >= P) throw MathError(ErrorKind::PrecisionTooLow, "no certified digits left after Delta_" + std::to_string(i));
  // F(s) = H(xi(s)) with H = F(psi(y)).
  const auto H = compose_uni(F.truncated(P), iso.psi);
  const auto D = delta_ij(H, 0, i).truncated(P - i);
  return compose_uni(D, iso.xi.truncated(P - i));
}

std::vector<CheckResult> check_relation2(const CohenIso& iso, const UniSeries& a, std::uint32_t i_max) {
  std::vector<CheckResult> out;
  const auto image = phi_eval(iso, a);
  for (std::uint32_t i = 1; i < i_max && i < iso.N; ++i) {
    const auto lhs = phi_eval(iso, delta_ij(a, 0, i));
    const auto rhs = hs_xi(iso, image, i);
    const auto bound = std::min(lhs.prec(), rhs.prec());
    const bool ok = lhs.equal_below(rhs, bound);
    out.push_back({"relation2[i=" + std::to_string(i) + "]", ok, bound, ok ? "" : to_string(sub(lhs, rhs))});
  }
  return out;
}

CheckResult check_defining_identity(const CohenIso& iso) {
  const auto image = phi_eval(iso, iso.spec.mu);
  auto s = KSeries(iso.K, 1, iso.N);
  s.add_term(MultiIndex{1}, iso.K.one());
  const bool ok = image.equals(s);
  return {"phi(mu)=s", ok, iso.N, ok ? "" : to_string(image)};
}

// (Delta_i^xi(s^k))(0) is the y^i coefficient of psi^k, because composing
// with xi does not move constant terms.
CheckResult check_flatness_kernel(const CohenIso& iso) {
  const auto& K = iso.K;
  auto pk = constant_series(K, iso.N, K.one());
  for (std::uint32_t k = 1; k < iso.N; ++k) {
    pk = mul(pk, iso.psi);
    for (std::uint32_t i = 1; i <= k; ++i) {
      const auto v = pk.coeff(MultiIndex{i});
      if (K.is_zero(v) != (i < k)) {
        return {"flatness_kernel", false, k,
                "entry (" + std::to_string(i) + "," + std::to_string(k) + ") breaks triangularity"};
      }
    }
  }
  return {"flatness_kernel", true, iso.N, ""};
}

std::vector<CheckResult> coefficient_field_check(const CohenIso& iso, const std::vector<ResidueElem>& samples) {
  const auto& K = iso.K;
  const auto N = iso.N;
  auto lift = [&](const ResidueElem& c) { return constant_series(K, N, c); };
  CheckResult flat{"flat", true, N, ""}, residue{"residue", true, N, ""};
  CheckResult add_ok{"closure_add", true, N, ""}, mul_ok{"closure_mul", true, N, ""};
  CheckResult bij{"bijection", true, N, ""};
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const auto& c = samples[j];
    const auto F = lift(c);
    for (std::uint32_t i = 1; i < N; ++i) {
      const auto h = hs_xi(iso, F, i);
      if (!vanishes(h, h.prec())) {
        flat.pass = false;
        flat.detail = "sample " + std::to_string(j) + " moved by Delta_" + std::to_string(i);
      }
    }
    if (!K.equal(F.constant_term(), c)) {
      residue.pass = false;
      residue.detail = "sample " + std::to_string(j);
    }
    const auto& c2 = samples[(j + 1) % samples.size()];
    if (!add(F, lift(c2)).equals(lift(K.add(c, c2)))) add_ok.pass = false;
    if (!mul(F, lift(c2)).equals(lift(K.mul(c, c2)))) mul_ok.pass = false;
    // Residue then lift returns the flat element, and distinct residues
    // have distinct lifts.
    if (!lift(F.constant_term()).equals(F)) bij.pass = false;
    for (std::size_t k = 0; k < j; ++k) {
      if (!K.equal(samples[k], c) && lift(samples[k]).equals(F)) bij.pass = false;
    }
  }
  return {flat, residue, add_ok, mul_ok, bij};
}

CheckResult check_residue_compat(const CohenIso& iso, const TowerPoly& a) {
  const auto image = phi_eval(iso, a);
  const bool ok = iso.K.equal(image.constant_term(), iso.K.reduce_tower(a));
  return {"residue_compat", ok, 1, ok ? "" : iso.K.to_string(image.constant_term())};
}

CheckResult check_multiplicative(const CohenIso& iso, const TowerPoly& a, const TowerPoly& b) {
  const auto lhs = phi_eval(iso, tower_mul(a, b));
  const auto rhs = mul(phi_eval(iso, a), phi_eval(iso, b));
  const auto bound = std::min(lhs.prec(), rhs.prec());
  const bool ok = lhs.equal_below(rhs, bound);
  return {"multiplicative", ok, bound, ok ? "" : to_string(sub(lhs, rhs))};
}

CounterexampleReport counterexample_demo(std::uint32_t p, std::uint32_t N) {
  PrimeField fp(p);
  const auto F = parse_tower_poly("X^" + std::to_string(p) + "*t - 1", fp);
  CounterexampleReport rep;
  rep.p = p;
  try {
    find_m0(F, {true});
  } catch (const MathError& e) {
    rep.locked_error = std::string(error_kind_name(e.kind()));
  }

  // Level 0 taken as is: every a_r' vanishes, so dG/dsigma(0, 0) = 0.
  MaxIdealSpec level0{p, F, 0, tower_scale(F, fp.neg(fp.one())), 1, 0};
  ResidueOptions unchecked;
  unchecked.validate_generator = false;
  ResidueField K0(residue_ctx_build(level0.mu, 0, unchecked));
  const auto G = cohen_equation(level0, K0, N);
  rep.level0_derivative_zero = K0.is_zero(G.coeff(MultiIndex{0, 1}));
  try {
    implicit_solve(G, N);
  } catch (const MathError& e) {
    rep.level0_error = std::string(error_kind_name(e.kind()));
  }

  const auto spec = find_m0(F);
  rep.m0 = spec.m0;
  rep.mu_eff = to_string(spec.mu);
  const auto iso = build_cohen(spec, spec.m0 + 1, N);
  rep.checks.push_back(check_defining_identity(iso));
  rep.checks.push_back(check_flatness_kernel(iso));
  for (auto& c : check_relation2(iso, UniSeries::variable(fp, 1, kPolyPrec, 0), 3)) rep.checks.push_back(c);
  rep.pipeline_ok = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return c.pass; });
  return rep;
}

}  // namespace hasse
