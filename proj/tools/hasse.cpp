// Command-line front end: one subcommand per library operation, JSON or
// text reports, exit 0 when every check passes, 1 on a failed check or a
// domain error, 2 on a usage error.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hasse/coeffield.hpp"
#include "hasse/normalization.hpp"
#include "hasse/parse.hpp"
#include "hasse/selftest.hpp"
#include "hasse/series_ops.hpp"
#include "hasse/weierstrass.hpp"
#include "json.hpp"

using json = nlohmann::json;
using namespace hasse;

namespace {

struct Config {
  std::uint32_t p = 2;
  std::uint32_t prec = 8;
  std::optional<std::uint32_t> level;
  std::uint64_t seed = 42;
  std::string format = "json";
  bool timings = false;
  std::size_t nvars = 2;
};

json checks_json(std::vector<CheckResult> checks) {
  std::stable_sort(checks.begin(), checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  json out = json::array();
  for (const auto& c : checks) {
    json j{{"name", c.name}, {"pass", c.pass}, {"certified_degree", c.certified_degree}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    out.push_back(std::move(j));
  }
  return out;
}

bool all_pass(const json& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const json& c) { return c["pass"].get<bool>(); });
}

std::vector<std::uint32_t> parse_index_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json exponents_json(const MultiIndex& a) { return a.values(); }

void print_text(const json& report, std::ostream& os) {
  os << "subcommand: " << report["subcommand"].get<std::string>() << "\n";
  if (report.contains("error")) {
    os << "error: " << report["error"]["kind"].get<std::string>() << ": " << report["error"]["message"].get<std::string>()
       << "\n";
  }
  if (report.contains("results")) {
    for (const auto& [k, v] : report["results"].items()) {
      os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  if (report.contains("checks")) {
    for (const auto& c : report["checks"]) {
      os << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " (below degree "
         << c["certified_degree"] << ")";
      if (c.contains("detail")) os << " " << c["detail"].get<std::string>();
      os << "\n";
    }
  }
  if (report.contains("timings")) os << "wall_ms: " << report["timings"]["wall_ms"] << "\n";
}

// Random element of K with exact Laurent coordinates.
ResidueElem random_residue(const ResidueField& K, std::mt19937_64& rng) {
  const auto& L = K.laurent();
  std::uniform_int_distribution<int> v(-2, 2), len(1, 4);
  std::uniform_int_distribution<std::uint32_t> c(0, L.characteristic() - 1);
  auto r = K.zero();
  for (auto& x : r.coords) {
    std::vector<std::uint32_t> co(static_cast<std::size_t>(len(rng)));
    for (auto& y : co) y = c(rng);
    x = L.make(v(rng), co, kExactPrecision);
  }
  return r;
}

TowerPoly random_tower(const PrimeField& fp, std::uint32_t max_level, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> lv(0, max_level), deg(0, 2), co(0, fp.characteristic() - 1);
  TowerPoly a{lv(rng), {}, true};
  const auto d = deg(rng);
  for (std::uint32_t r = 0; r <= d; ++r) {
    UniSeries g(fp, 1, kPolyPrec);
    for (std::uint32_t e = 0; e < 5; ++e) g.add_term(MultiIndex{e}, {co(rng)});
    a.coeffs.push_back(std::move(g));
  }
  return a;
}

json layer_json(const CoordLayer& l) {
  json perm = json::array(), shifts = json::array();
  for (auto i : l.perm) perm.push_back(i + 1);
  for (const auto& s : l.shifts) shifts.push_back(to_string(s));
  return {{"active", l.active}, {"perm", perm}, {"sigma", l.sigma}, {"shifts", shifts}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hasse-Schmidt derivations, Weierstrass preparation, normalization and Cohen isomorphisms over F_p"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  std::uint32_t level_value = 0;
  app.add_option("--p", cfg.p, "characteristic (prime)")
      ->check(CLI::Range(2u, 65521u))
      ->check(CLI::Validator([](std::string& v) { return is_prime(std::stoull(v)) ? "" : v + " is not prime"; }, "PRIME"));
  app.add_option("--prec", cfg.prec, "precision N (total degree, or s-degree for cohen)")->check(CLI::Range(2u, 4000u));
  auto* level_opt = app.add_option("--level", level_value, "working level M for cohen");
  app.add_option("--seed", cfg.seed, "seed for random streams");
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timings", cfg.timings, "add wall time to the report (breaks byte-identical output)");
  app.add_option("--nvars", cfg.nvars, "number of variables X1..Xn")->check(CLI::Range(1, 8));

  // delta
  auto* delta = app.add_subcommand("delta", "Hasse-Schmidt operator Delta^(alpha) of a series");
  std::string delta_f, delta_alpha_text;
  delta->add_option("series", delta_f)->required();
  delta->add_option("--alpha", delta_alpha_text, "comma-separated multi-index")->required();

  // leibniz-check
  auto* leib = app.add_subcommand("leibniz-check", "Leibniz law for Delta on a pair or on seeded random pairs");
  std::vector<std::string> leib_pair;
  int leib_count = 20;
  std::uint32_t leib_order = 4;
  leib->add_option("pair", leib_pair, "f g (random pairs when omitted)")->expected(0, 2);
  leib->add_option("--count", leib_count, "random pairs");
  leib->add_option("--max-order", leib_order, "largest |alpha|");

  // distinguish / wprep
  auto* dist = app.add_subcommand("distinguish", "make a series X_n-distinguished by X_j -> X_j + X_n^sigma_j");
  std::string dist_f;
  bool p_multiples = false, always_shift = false;
  dist->add_option("series", dist_f)->required();
  dist->add_flag("--p-multiples", p_multiples, "sigma entries divisible by p");
  dist->add_flag("--always-shift", always_shift, "shift even when already distinguished");

  auto* wprep = app.add_subcommand("wprep", "Weierstrass preparation g = unit * H");
  std::string wprep_f;
  bool wprep_shift = false;
  wprep->add_option("series", wprep_f)->required();
  wprep->add_flag("--distinguish", wprep_shift, "distinguish first");
  wprep->add_flag("--p-multiples", p_multiples, "sigma entries divisible by p");

  // normalize
  auto* norm = app.add_subcommand("normalize", "Noether normalization of an ideal given by polynomial generators");
  std::vector<std::string> norm_gens;
  bool ensure_sep = false;
  norm->add_option("gens", norm_gens)->required();
  norm->add_flag("--ensure-separable", ensure_sep, "search for a separable presentation");

  // cohen
  auto* cohen = app.add_subcommand("cohen", "Cohen isomorphism for the maximal ideal (mu)");
  cohen->require_subcommand(1);
  std::string mu_text, checks_text = "coefficient-field,flatness,multiplicative,relation2,residue";
  std::vector<std::string> verify_inputs;
  std::uint32_t i_max = 9;
  bool lock_level = false;
  auto* cbuild = cohen->add_subcommand("build", "construct xi and report phi(mu) = s");
  auto* cverify = cohen->add_subcommand("verify", "run theorem checks");
  for (auto* sc : {cbuild, cverify}) {
    sc->add_option("--mu", mu_text, "polynomial in t (or t^(1/p^m)) and X")->required();
    sc->add_flag("--lock-level", lock_level, "do not descend");
  }
  cverify->add_option("--checks", checks_text, "comma-separated subset of the default list");
  cverify->add_option("--a", verify_inputs, "polynomials in X for relation (2) (default X, X^2)");
  cverify->add_option("--i-max", i_max, "relation (2) is checked for 1 <= i < i-max");

  // counterexample
  auto* cex = app.add_subcommand("counterexample", "X^p t - 1: no coefficient field over k(t)");
  cex->add_flag("--lock-level", lock_level, "stay at level 0 (exit 1 with AllCoefficientsPthPowers)");

  auto* self = app.add_subcommand("selftest", "seeded property suites over every module");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*level_opt) cfg.level = level_value;

  const auto started = std::chrono::steady_clock::now();
  json report;
  json inputs{{"p", cfg.p}, {"prec", cfg.prec}, {"seed", cfg.seed}, {"nvars", cfg.nvars}};
  if (cfg.level) inputs["level"] = *cfg.level;
  int exit_code = 0;

  auto finish = [&]() {
    if (cfg.timings) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      report["timings"] = {{"wall_ms", ms}};
    }
    if (cfg.format == "json") {
      std::cout << report.dump(2) << "\n";
    } else {
      print_text(report, std::cout);
    }
  };

  try {
    const PrimeField fp(cfg.p);
    auto series = [&](const std::string& text) { return parse_series(text, fp, cfg.nvars, cfg.prec); };
    json results = json::object();
    json checks = json::array();

    if (delta->parsed()) {
      report["subcommand"] = "delta";
      inputs["series"] = delta_f;
      inputs["alpha"] = delta_alpha_text;
      const auto f = series(delta_f);
      const MultiIndex alpha(parse_index_list(delta_alpha_text));
      const auto d = delta_alpha(f, alpha);
      results["delta"] = to_string(d);
      results["certified_below"] = cfg.prec > alpha.total() ? cfg.prec - alpha.total() : 0;
    } else if (leib->parsed()) {
      report["subcommand"] = "leibniz-check";
      std::vector<std::pair<Series, Series>> pairs;
      if (leib_pair.size() == 2) {
        inputs["pair"] = leib_pair;
        pairs.emplace_back(series(leib_pair[0]), series(leib_pair[1]));
      } else {
        if (!leib_pair.empty()) throw MathError(ErrorKind::InvalidArgument, "leibniz-check takes zero or two series");
        inputs["count"] = leib_count;
        auto rng = module_rng(cfg.seed, "series.leibniz");
        std::uniform_int_distribution<std::uint32_t> coef(0, cfg.p - 1);
        auto rnd = [&] {
          Series s(fp, cfg.nvars, cfg.prec);
          for (const auto& a : multi_indices_up_to(cfg.nvars, cfg.prec - 1)) s.add_term(a, {coef(rng)});
          return s;
        };
        for (int i = 0; i < leib_count; ++i) {
          auto f = rnd();
          pairs.emplace_back(std::move(f), rnd());
        }
      }
      std::uint64_t identities = 0;
      CheckResult c{"leibniz", true, cfg.prec > leib_order ? cfg.prec - leib_order : 0, ""};
      for (const auto& [f, g] : pairs) {
        const auto fg = mul(f, g);
        for (const auto& alpha : multi_indices_up_to(cfg.nvars, leib_order)) {
          if (alpha.total() >= cfg.prec) continue;
          Series rhs(fp, cfg.nvars, cfg.prec);
          for (const auto& beta : multi_indices_up_to(cfg.nvars, static_cast<std::uint32_t>(alpha.total()))) {
            if (!beta.leq(alpha)) continue;
            MultiIndex rest(cfg.nvars);
            for (std::size_t i = 0; i < cfg.nvars; ++i) rest[i] = alpha[i] - beta[i];
            rhs = add(rhs, mul(delta_alpha(f, beta), delta_alpha(g, rest)));
          }
          ++identities;
          if (!delta_alpha(fg, alpha).equal_below(rhs, cfg.prec - static_cast<std::uint32_t>(alpha.total()))) {
            c.pass = false;
            c.detail = "fails for alpha=" + alpha.to_string() + " f=" + to_string(f) + " g=" + to_string(g);
          }
        }
      }
      results["identities_checked"] = identities;
      checks = checks_json({c});
    } else if (dist->parsed()) {
      report["subcommand"] = "distinguish";
      inputs["series"] = dist_f;
      inputs["p_multiples"] = p_multiples;
      inputs["always_shift"] = always_shift;
      const auto d = distinguish(series(dist_f), {p_multiples, always_shift});
      json newton = json::array();
      for (const auto& a : d.newton) newton.push_back(exponents_json(a));
      results = {{"sigma", d.sigma.sigma}, {"g", to_string(d.g)}, {"order", d.order}, {"newton", newton}};
    } else if (wprep->parsed()) {
      report["subcommand"] = "wprep";
      inputs["series"] = wprep_f;
      auto g = series(wprep_f);
      if (wprep_shift) {
        const auto d = distinguish(g, {p_multiples, false});
        results["sigma"] = d.sigma.sigma;
        g = d.g;
      }
      const auto w = weierstrass_prepare(g);
      json lower = json::array();
      for (const auto& a : w.lower) lower.push_back(to_string(a));
      results["q"] = w.q;
      results["H"] = to_string(w.H);
      results["unit"] = to_string(w.unit);
      results["lower"] = lower;
      checks = checks_json({{"unit*H=g", mul(w.unit, w.H).equals(g), cfg.prec, ""}});
    } else if (norm->parsed()) {
      report["subcommand"] = "normalize";
      inputs["gens"] = norm_gens;
      inputs["ensure_separable"] = ensure_sep;
      std::vector<Series> gens;
      for (const auto& s : norm_gens) gens.push_back(series(s));
      NormalizeOptions opts;
      opts.ensure_separable = ensure_sep;
      const auto r = gens.size() == 1 ? normalize_principal(gens[0], opts) : normalize_ideal(gens, opts);
      json layers = json::array(), witnesses = json::array();
      for (const auto& l : r.change.layers) layers.push_back(layer_json(l));
      for (const auto& l : r.levels) {
        witnesses.push_back({{"active", l.active},
                             {"q", l.witness.q},
                             {"H", to_string(l.witness.H)},
                             {"unit", to_string(l.witness.unit)},
                             {"separable", l.separability.separable},
                             {"certificate", l.separability.certificate}});
      }
      results = {{"e", r.e}, {"change", layers}, {"witnesses", witnesses}, {"separable", r.separable},
                 {"attempts", r.attempts}};
      bool shift_form = true;
      for (const auto& l : r.change.layers) {
        for (auto s : l.sigma) shift_form = shift_form && s % cfg.p == 0;
      }
      std::vector<CheckResult> cs{{"shift_exponents_divisible_by_p", shift_form, cfg.prec, ""}};
      if (ensure_sep) cs.push_back({"separable", r.separable, cfg.prec, ""});
      checks = checks_json(cs);
    } else if (cohen->parsed()) {
      const bool verify = cverify->parsed();
      report["subcommand"] = verify ? "cohen verify" : "cohen build";
      inputs["mu"] = mu_text;
      const auto spec = find_m0(parse_tower_poly(mu_text, fp), {lock_level});
      const auto M = cfg.level.value_or(spec.m0 + 2);
      const auto iso = build_cohen(spec, M, cfg.prec);
      results["m0"] = spec.m0;
      results["level"] = M;
      results["mu_eff"] = to_string(spec.mu);
      results["residue_degree"] = iso.K.ctx().degree();
      results["xi"] = to_string(iso.xi, {"s"});
      std::vector<CheckResult> cs{check_defining_identity(iso)};
      if (verify) {
        inputs["checks"] = checks_text;
        auto rng = module_rng(cfg.seed, "coeffield");
        std::vector<UniSeries> as;
        if (verify_inputs.empty()) verify_inputs = {"X", "X^2"};
        inputs["a"] = verify_inputs;
        for (const auto& s : verify_inputs) as.push_back(parse_tower_poly(s, fp).coeffs.at(0));
        for (const auto& name : split_names(checks_text)) {
          if (name == "relation2") {
            for (const auto& a : as) {
              for (auto c : check_relation2(iso, a, i_max)) {
                c.name = "relation2[a=" + to_string(a, {"X"}) + "," + c.name.substr(10);
                cs.push_back(std::move(c));
              }
            }
          } else if (name == "flatness") {
            cs.push_back(check_flatness_kernel(iso));
          } else if (name == "residue") {
            for (int i = 0; i < 4; ++i) {
              auto c = check_residue_compat(iso, random_tower(fp, M, rng));
              c.name += "[" + std::to_string(i) + "]";
              cs.push_back(std::move(c));
            }
          } else if (name == "multiplicative") {
            for (int i = 0; i < 4; ++i) {
              const auto a = random_tower(fp, M, rng);
              auto c = check_multiplicative(iso, a, random_tower(fp, M, rng));
              c.name += "[" + std::to_string(i) + "]";
              cs.push_back(std::move(c));
            }
          } else if (name == "coefficient-field") {
            const auto& K = iso.K;
            std::vector<ResidueElem> samples{K.one(), K.theta(spec.m0), K.embed(K.laurent().monomial(1, 1))};
            for (int i = 0; i < 3; ++i) samples.push_back(random_residue(K, rng));
            for (auto& c : coefficient_field_check(iso, samples)) {
              c.name = "coefficient_field." + c.name;
              cs.push_back(std::move(c));
            }
          } else {
            throw MathError(ErrorKind::InvalidArgument, "unknown check '" + name + "'");
          }
        }
      }
      checks = checks_json(cs);
    } else if (cex->parsed()) {
      report["subcommand"] = "counterexample";
      inputs["lock_level"] = lock_level;
      const auto rep = counterexample_demo(cfg.p, cfg.prec);
      results = {{"locked", rep.locked_error},
                 {"level0_derivative_zero", rep.level0_derivative_zero},
                 {"level0", rep.level0_error},
                 {"m0", rep.m0},
                 {"mu_eff", rep.mu_eff}};
      checks = checks_json(rep.checks);
      if (lock_level) {
        report["error"] = {{"kind", rep.locked_error},
                           {"message", "every coefficient of X^p t - 1 is a p-th power at the locked level 0"}};
        exit_code = 1;
      }
    } else if (self->parsed()) {
      report["subcommand"] = "selftest";
      checks = checks_json(run_selftest(cfg.seed));
    }

    report["inputs"] = inputs;
    report["results"] = results;
    if (!checks.empty()) report["checks"] = checks;
    const bool ok = all_pass(checks) && exit_code == 0;
    report["ok"] = ok;
    if (!ok) exit_code = 1;
  } catch (const MathError& e) {
    report["inputs"] = inputs;
    report["error"] = {{"kind", std::string(error_kind_name(e.kind()))}, {"message", e.what()}};
    report["ok"] = false;
    exit_code = 1;
  }
  if (!report.contains("subcommand")) report["subcommand"] = app.get_subcommands().front()->get_name();
  finish();
  return exit_code;
}
