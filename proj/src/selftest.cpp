#include "hasse/selftest.hpp"

#include <algorithm>
#include <functional>

#include "hasse/implicit.hpp"
#include "hasse/normalization.hpp"
#include "hasse/perfect_closure.hpp"
#include "hasse/series_ops.hpp"
#include "hasse/weierstrass.hpp"

namespace hasse {

std::mt19937_64 module_rng(std::uint64_t seed, std::string_view module) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : module) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

namespace {

Series random_series(const PrimeField& fp, std::size_t n, std::uint32_t prec, std::mt19937_64& rng, double density,
                     std::uint32_t min_order = 0) {
  Series s(fp, n, prec);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<std::uint32_t> coef(1, fp.characteristic() - 1);
  for (const auto& a : multi_indices_up_to(n, prec - 1)) {
    if (a.total() >= min_order && keep(rng)) s.add_term(a, {coef(rng)});
  }
  return s;
}

CheckResult run(const std::string& name, std::uint32_t degree, const std::function<bool(std::string&)>& body) {
  CheckResult r{name, false, degree, ""};
  try {
    r.pass = body(r.detail);
  } catch (const MathError& e) {
    r.detail = e.what();
  }
  return r;
}

bool leibniz(std::mt19937_64& rng, std::string& detail) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField fp(p);
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int k = 0; k < 4; ++k) {
        const auto f = random_series(fp, n, 8, rng, 0.5);
        const auto g = random_series(fp, n, 8, rng, 0.5);
        const auto fg = mul(f, g);
        for (const auto& alpha : multi_indices_up_to(n, 4)) {
          Series rhs(fp, n, 8);
          for (const auto& beta : multi_indices_up_to(n, static_cast<std::uint32_t>(alpha.total()))) {
            if (!beta.leq(alpha)) continue;
            MultiIndex rest(n);
            for (std::size_t i = 0; i < n; ++i) rest[i] = alpha[i] - beta[i];
            rhs = add(rhs, mul(delta_alpha(f, beta), delta_alpha(g, rest)));
          }
          if (!delta_alpha(fg, alpha).equal_below(rhs, 8 - static_cast<std::uint32_t>(alpha.total()))) {
            detail = "p=" + std::to_string(p) + " alpha=" + alpha.to_string();
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool closure_round_trip(std::mt19937_64& rng, std::string& detail) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PerfectClosure k(p);
    std::uniform_int_distribution<std::uint32_t> coef(0, p - 1), lvl(0, 3);
    std::uniform_int_distribution<int> deg(0, 4);
    auto poly = [&](bool nonzero) {
      while (true) {
        std::vector<std::uint32_t> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : c) x = coef(rng);
        FpPoly f(std::move(c));
        if (!nonzero || !f.is_zero()) return f;
      }
    };
    for (int i = 0; i < 100; ++i) {
      const auto a = k.canonicalize({lvl(rng), poly(false), poly(true)});
      if (!(k.pth_root(k.frobenius(a)) == a) || !(k.frobenius(k.pth_root(a)) == a)) {
        detail = k.to_string(a);
        return false;
      }
    }
  }
  return true;
}

// g with g(0, ..., 0, X_n) of order exactly q.
Series random_distinguished(const PrimeField& fp, std::size_t n, std::uint32_t prec, std::uint32_t q,
                            std::mt19937_64& rng) {
  auto g = random_series(fp, n, prec, rng, 0.2, 1);
  g = sub(g, restrict_to_axis(g, n - 1));
  g.add_term(MultiIndex::unit(n, n - 1, q), fp.one());
  return g;
}

bool weierstrass(std::mt19937_64& rng, std::string& detail) {
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField fp(p);
    std::uniform_int_distribution<std::uint32_t> qd(1, 4);
    for (int i = 0; i < 10; ++i) {
      const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
      const auto g = random_distinguished(fp, n, 10, qd(rng), rng);
      const auto f = random_series(fp, n, 10, rng, 0.3);
      const auto [quot, rem] = weierstrass_divide(f, g);
      const auto w = weierstrass_prepare(g);
      if (!add(mul(quot, g), rem).equals(f) || !mul(w.unit, w.H).equals(g)) {
        detail = "p=" + std::to_string(p) + " g=" + to_string(g);
        return false;
      }
    }
  }
  return true;
}

bool order_law(std::mt19937_64& rng, std::string& detail) {
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField fp(p);
    for (std::size_t n : {2u, 3u}) {
      for (int i = 0; i < 10; ++i) {
        auto f = random_series(fp, n, 6, rng, 0.15, 1);
        if (f.is_zero()) continue;
        const auto d = distinguish(f.with_prec(64), {true, true});
        std::uint64_t min_l = ~std::uint64_t{0};
        for (const auto& a : d.newton) min_l = std::min(min_l, linear_form(d.sigma.sigma, a));
        if (d.order != min_l) {
          detail = to_string(f);
          return false;
        }
      }
    }
  }
  return true;
}

bool implicit(std::mt19937_64& rng, std::string& detail) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField fp(p);
    for (int i = 0; i < 5; ++i) {
      auto G = random_series(fp, 2, 16, rng, 0.1, 2);
      G.add_term(MultiIndex{0, 1}, fp.one());
      G.add_term(MultiIndex{1, 0}, fp.neg(fp.one()));
      const auto xi = implicit_solve(G, 16);
      const auto r = eval_at_sigma(G, xi, 16);
      const auto twice = implicit_solve(G.with_prec(32), 32);
      if (!r.is_zero() || !twice.truncated(16).equals(xi)) {
        detail = to_string(G);
        return false;
      }
    }
  }
  return true;
}

bool normalization(std::mt19937_64& rng, std::string& detail) {
  const PrimeField f2(2);
  auto var = [&](std::size_t j) { return Series::variable(f2, 2, 16, j); };
  const auto cusp = add(mul(var(0), var(0)), mul(var(1), mul(var(1), var(1))));
  if (normalize_principal(cusp).e != 1) return false;
  if (!normalize_principal(var(0), {true}).separable) return false;
  if (normalize_ideal({var(1), var(0)}).e != 0) return false;
  for (int i = 0; i < 5; ++i) {
    auto f = random_series(f2, 2, 5, rng, 0.2, 2);
    f.add_term(MultiIndex{1, 0}, f2.one());
    const auto r = normalize_principal(f.with_prec(24), {true});
    if (!r.separable) {
      detail = to_string(f);
      return false;
    }
  }
  return true;
}

bool cohen(std::mt19937_64& rng, std::string& detail) {
  const PrimeField f2(2);
  const auto spec = find_m0(parse_tower_poly("t + X", f2));
  const auto iso = build_cohen(spec, spec.m0 + 1, 8);
  std::vector<CheckResult> checks{check_defining_identity(iso), check_flatness_kernel(iso)};
  const auto a = random_series(f2, 1, 6, rng, 0.6).with_prec(kPolyPrec);
  for (auto& c : check_relation2(iso, a, 5)) checks.push_back(c);
  for (const auto& c : checks) {
    if (!c.pass) {
      detail = c.name;
      return false;
    }
  }
  return true;
}

bool counterexample(std::mt19937_64&, std::string& detail) {
  const auto rep = counterexample_demo(2);
  detail = rep.locked_error + "/" + rep.level0_error;
  return rep.locked_error == "AllCoefficientsPthPowers" && rep.level0_error == "DerivativeVanishes" && rep.m0 == 1 &&
         rep.pipeline_ok;
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  struct Suite {
    const char* name;
    std::uint32_t degree;
    bool (*fn)(std::mt19937_64&, std::string&);
  };
  const Suite suites[] = {
      {"coeffield.counterexample", 8, counterexample},
      {"coeffield.pipeline", 8, cohen},
      {"fields.closure_round_trip", 0, closure_round_trip},
      {"implicit.residual", 16, implicit},
      {"normalization.separability", 24, normalization},
      {"series.leibniz", 8, leibniz},
      {"weierstrass.division", 10, weierstrass},
      {"weierstrass.order_law", 64, order_law},
  };
  std::vector<CheckResult> out;
  for (const auto& s : suites) {
    auto rng = module_rng(seed, s.name);
    out.push_back(run(s.name, s.degree, [&](std::string& d) { return s.fn(rng, d); }));
  }
  return out;
}

}  // namespace hasse
