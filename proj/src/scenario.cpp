#include "banachlab/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "banachlab/constants.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/geometry.hpp"
#include "banachlab/kernels.hpp"
#include "banachlab/lipfun.hpp"
#include "banachlab/parallel.hpp"
#include "banachlab/radonify.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/serialize.hpp"

namespace banach {

using nlohmann::json;

namespace {

const std::vector<std::string> kCommands = {
    "estimate-type",  "estimate-cotype", "transfer-ratio",       "counterexample-search",
    "gamma-norm",     "rbound",          "growth-curve",         "verify-constructions"};

// ---------------------------------------------------------------------------
// Validation and default-filling. resolve_* appends human-readable messages
// (with the parameter path) and returns the parameter object with every
// default made explicit.

template <class Fn>
void checked(Validation& v, const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const capacity_error& e) {
    v.capacity.push_back(path + ": " + e.what());
  } catch (const std::exception& e) {
    v.errors.push_back(path + ": " + e.what());
  }
}

json resolved_config(const json& params, std::uint64_t seed, Validation& v) {
  WitnessSearchConfig cfg;
  checked(v, "parameters.config",
          [&] { cfg = parse_search_config(params.value("config", json()), seed); });
  return json{{"restarts", cfg.restarts},
              {"iters", cfg.iters},
              {"step", cfg.step},
              {"samples_per_eval", cfg.samples_per_eval},
              {"final_samples", cfg.final_samples},
              {"seed", cfg.seed}};
}

void require_keys(const json& params, std::initializer_list<const char*> keys, Validation& v) {
  for (const char* k : keys)
    if (!params.contains(k)) v.errors.push_back(std::string("parameters.") + k + ": missing");
}

void check_exact_cap(bool exact, const std::vector<int>& ns, Validation& v) {
  if (!exact) return;
  for (int n : ns)
    if (n > kMaxExactSigns)
      v.capacity.push_back("parameters.n: 2^n enumeration with n = " + std::to_string(n) +
                           " exceeds the cap of " + std::to_string(kMaxExactSigns));
}

json resolve_estimate(const json& params, std::uint64_t seed, bool is_type, Validation& v) {
  json out = json::object();
  require_keys(params, {"space", "n"}, v);
  NoiseSpec noise;
  if (params.contains("space"))
    checked(v, "parameters.space", [&] { out["space"] = json(parse_space(params.at("space"))); });
  checked(v, "parameters.noise", [&] {
    noise = parse_noise(params.value("noise", json()));
    out["noise"] = json(noise);
  });
  int n = 0;
  if (params.contains("n")) {
    checked(v, "parameters.n", [&] {
      n = params.at("n").get<int>();
      if (n < 1) throw input_error("n must be >= 1");
    });
    out["n"] = n;
  }
  const bool normalized = is_type && params.value("normalized", false);
  if (is_type) out["normalized"] = normalized;
  const bool exact = params.value("exact", false);
  out["exact"] = exact;
  if (exact && noise.family() != NoiseSpec::Family::rademacher)
    v.errors.push_back("parameters.exact: exact enumeration requires rademacher noise");
  if (normalized && noise.family() != NoiseSpec::Family::gaussian &&
      noise.family() != NoiseSpec::Family::rademacher)
    v.errors.push_back("parameters.normalized: needs gaussian or rademacher noise");
  check_exact_cap(exact, {n}, v);
  out["config"] = resolved_config(params, seed, v);
  return out;
}

json resolve_transfer(const json& params, std::uint64_t /*seed*/, Validation& v) {
  json out = json::object();
  require_keys(params, {"f", "tuple"}, v);
  int n = 0;
  if (params.contains("f") && params.contains("tuple")) {
    checked(v, "parameters.f", [&] {
      LipschitzFn f = parse_lipschitz(params.at("f"));
      out["f"] = json(f);
      VectorTuple t = parse_tuple(f.domain(), params.at("tuple"));
      n = t.n();
      out["tuple"] = t.vectors;
    });
  }
  checked(v, "parameters.noise",
          [&] { out["noise"] = json(parse_noise(params.value("noise", json()))); });
  checked(v, "parameters.scales", [&] {
    std::vector<double> scales =
        params.value("scales", std::vector<double>(static_cast<std::size_t>(n), 1.0));
    if (n > 0 && static_cast<int>(scales.size()) != n)
      throw input_error("scales must match the tuple length");
    for (double a : scales)
      if (!(a > 0.0)) throw input_error("scales must be positive");
    out["scales"] = scales;
  });
  const std::uint64_t samples = params.value("samples", std::uint64_t{100000});
  if (samples < 2) v.errors.push_back("parameters.samples: must be >= 2");
  out["samples"] = samples;
  return out;
}

json resolve_counterexample(const json& params, std::uint64_t seed, Validation& v) {
  json out = json::object();
  require_keys(params, {"X", "Y", "n"}, v);
  if (params.contains("X"))
    checked(v, "parameters.X", [&] { out["X"] = json(parse_space(params.at("X"))); });
  if (params.contains("Y"))
    checked(v, "parameters.Y", [&] { out["Y"] = json(parse_space(params.at("Y"))); });
  if (params.contains("n"))
    checked(v, "parameters.n", [&] {
      int n = params.at("n").get<int>();
      if (n < 1) throw input_error("n must be >= 1");
      out["n"] = n;
    });
  const double eps = params.value("eps", 0.05);
  if (!(eps > 0.0)) v.errors.push_back("parameters.eps: must be > 0");
  out["eps"] = eps;
  out["config"] = resolved_config(params, seed, v);
  return out;
}

json resolve_gamma_norm(const json& params, std::uint64_t /*seed*/, Validation& v) {
  json out = json::object();
  require_keys(params, {"phi"}, v);
  if (params.contains("phi"))
    checked(v, "parameters.phi",
            [&] { out["phi"] = json(parse_simple_function(params.at("phi"))); });
  if (params.contains("f"))
    checked(v, "parameters.f", [&] {
      LipschitzFn f = parse_lipschitz(params.at("f"));
      SimpleFunction phi = parse_simple_function(params.at("phi"));
      if (!(f.domain() == phi.values.space))
        throw input_error("f domain must match phi's space");
      out["f"] = json(f);
    });
  const std::uint64_t samples = params.value("samples", std::uint64_t{100000});
  if (samples < 2) v.errors.push_back("parameters.samples: must be >= 2");
  out["samples"] = samples;
  return out;
}

json resolve_rbound(const json& params, std::uint64_t seed, Validation& v) {
  json out = json::object();
  require_keys(params, {"family"}, v);
  int n = params.value("n", 0);
  if (params.contains("family")) {
    checked(v, "parameters.family", [&] {
      const json& fam = params.at("family");
      if (!fam.is_array() || fam.empty()) throw input_error("family must be a nonempty array");
      std::vector<LinearMap> maps;
      for (const auto& m : fam) maps.push_back(parse_linear_map(m));
      for (const auto& m : maps)
        if (!(m.domain == maps.front().domain) || !(m.codomain == maps.front().codomain))
          throw input_error("family must share domain and codomain");
      if (n == 0) n = static_cast<int>(maps.size());
      out["family"] = fam;
    });
  }
  if (n < 1) v.errors.push_back("parameters.n: must be >= 1");
  out["n"] = n;
  const bool exact = params.value("exact", false);
  out["exact"] = exact;
  check_exact_cap(exact, {n}, v);
  out["config"] = resolved_config(params, seed, v);
  return out;
}

json resolve_growth(const json& params, std::uint64_t seed, Validation& v) {
  json out = json::object();
  require_keys(params, {"constant", "space_family", "ns"}, v);
  if (params.contains("constant")) {
    const std::string c = params.at("constant").get<std::string>();
    if (c != "type2" && c != "cotype2")
      v.errors.push_back("parameters.constant: must be 'type2' or 'cotype2'");
    out["constant"] = c;
  }
  std::vector<int> ns;
  if (params.contains("ns")) {
    checked(v, "parameters.ns", [&] {
      ns = params.at("ns").get<std::vector<int>>();
      if (ns.empty()) throw input_error("ns must be nonempty");
      for (int n : ns)
        if (n < 1) throw input_error("every n must be >= 1");
    });
    out["ns"] = ns;
  }
  if (params.contains("space_family")) {
    checked(v, "parameters.space_family", [&] {
      json fam = params.at("space_family");
      if (fam.value("kind", "lp") != "lp")
        throw input_error("space_family must be a plain lp family");
      fam["dim"] = 1;
      parse_space(fam);  // validates p
      out["space_family"] = params.at("space_family");
    });
  }
  checked(v, "parameters.noise",
          [&] { out["noise"] = json(parse_noise(params.value("noise", json()))); });
  const bool exact = params.value("exact", false);
  out["exact"] = exact;
  if (out.contains("noise") && exact &&
      out["noise"].value("family", "") != std::string("rademacher"))
    v.errors.push_back("parameters.exact: exact enumeration requires rademacher noise");
  check_exact_cap(exact, ns, v);
  out["config"] = resolved_config(params, seed, v);
  return out;
}

json resolve_verify(const json& params, std::uint64_t /*seed*/, Validation& v) {
  json out = json::object();
  const double eps = params.value("eps", 0.05);
  if (!(eps > 0.0)) v.errors.push_back("parameters.eps: must be > 0");
  out["eps"] = eps;
  out["sector_samples"] = params.value("sector_samples", std::uint64_t{100000});
  out["separation_trials"] = params.value("separation_trials", std::uint64_t{10000});
  out["lip_samples"] = params.value("lip_samples", std::uint64_t{4000});
  out["refine_iters"] = params.value("refine_iters", 60);
  return out;
}

json resolve_params(const std::string& command, const json& params, std::uint64_t seed,
                    Validation& v) {
  if (command == "estimate-type") return resolve_estimate(params, seed, true, v);
  if (command == "estimate-cotype") return resolve_estimate(params, seed, false, v);
  if (command == "transfer-ratio") return resolve_transfer(params, seed, v);
  if (command == "counterexample-search") return resolve_counterexample(params, seed, v);
  if (command == "gamma-norm") return resolve_gamma_norm(params, seed, v);
  if (command == "rbound") return resolve_rbound(params, seed, v);
  if (command == "growth-curve") return resolve_growth(params, seed, v);
  if (command == "verify-constructions") return resolve_verify(params, seed, v);
  v.errors.push_back("command: unknown command '" + command + "'");
  return json::object();
}

// ---------------------------------------------------------------------------
// Execution against resolved parameters.

double ratio_std_error(const std::string& constant, double ratio, const SumEstimate& num) {
  if (!(num.mean > 0.0) || !(ratio > 0.0)) return 0.0;
  (void)constant;  // same first-order propagation for type2 and cotype2
  return ratio * num.std_error / (2.0 * num.mean);
}

json estimate_results(const std::string& constant, const NormedSpace& space,
                      const NoiseSpec& noise, int n, const ConstantEstimate& est,
                      const WitnessSearchConfig& cfg) {
  return json{{"constant", constant},
              {"space", space},
              {"noise", noise},
              {"n", n},
              {"lower_bound", est.lower_bound},
              {"std_error", ratio_std_error(constant, est.lower_bound, est.numerator)},
              {"witness", est.witness.vectors},
              {"numerator", est.numerator},
              {"denominator", est.denominator},
              {"seeds", json{{"root", cfg.seed}}},
              {"samples",
               json{{"search_per_eval", cfg.samples_per_eval}, {"final", cfg.final_samples}}}};
}

json run_estimate(const json& p, bool is_type) {
  NormedSpace space = parse_space(p.at("space"));
  NoiseSpec noise = parse_noise(p.at("noise"));
  const int n = p.at("n").get<int>();
  WitnessSearchConfig cfg = parse_search_config(p.at("config"), 0);
  const bool normalized = is_type && p.value("normalized", false);
  ConstantEstimate est = !is_type          ? cotype2_lower(space, noise, n, cfg)
                         : normalized      ? type2_normalized_sup(space, noise, n, cfg)
                                           : type2_lower(space, noise, n, cfg);
  const std::string constant =
      !is_type ? "cotype2" : (normalized ? "type2_normalized" : "type2");
  return estimate_results(constant, space, noise, n, est, cfg);
}

json run_transfer(const json& p, std::uint64_t seed) {
  LipschitzFn f = parse_lipschitz(p.at("f"));
  VectorTuple tuple = parse_tuple(f.domain(), p.at("tuple"));
  std::vector<double> scales = p.at("scales").get<std::vector<double>>();
  NoiseSpec noise = parse_noise(p.at("noise"));
  TransferRatio tr =
      transfer_ratio(f, tuple, scales, noise, p.at("samples").get<std::uint64_t>(), seed);
  return json(tr);
}

json run_counterexample(const json& p) {
  NormedSpace X = parse_space(p.at("X"));
  NormedSpace Y = parse_space(p.at("Y"));
  WitnessSearchConfig cfg = parse_search_config(p.at("config"), 0);
  CounterexampleResult r =
      transfer_counterexample_search(X, Y, p.at("n").get<int>(), p.at("eps").get<double>(), cfg);
  return json{{"transfer", r.transfer},
              {"embedding", json{{"norm_upper", r.embedding_norm_upper},
                                 {"gain_lower", r.embedding_gain_lower}}},
              {"centers", r.centers.vectors},
              {"targets", r.targets.vectors},
              {"scales", r.scales},
              {"target_second_moment", r.target_second_moment},
              {"identity_gap",
               std::fabs(r.target_second_moment.mean - r.transfer.numerator.mean)}};
}

json run_gamma_norm(const json& p, std::uint64_t seed) {
  SimpleFunction phi = parse_simple_function(p.at("phi"));
  const std::uint64_t samples = p.at("samples").get<std::uint64_t>();
  json out;
  out["ell_norm"] = json(ell_norm(phi, samples, seed));
  out["l2x_norm"] = l2x_norm(phi);
  if (p.contains("f")) {
    LipschitzFn f = parse_lipschitz(p.at("f"));
    SimpleFunction lifted = lift(f, phi);
    json jl;
    jl["ell_norm"] = json(ell_norm(lifted, samples, seed));
    jl["lip_upper"] = f.lip_upper();
    if (!phi.is_zero())
      jl["ratio_vs_zero"] = json(lift_lipschitz_ratio(f, phi, zero_like(phi), samples, seed));
    out["lift"] = jl;
  }
  return out;
}

json run_rbound(const json& p) {
  std::vector<LinearMap> maps;
  for (const auto& m : p.at("family")) maps.push_back(parse_linear_map(m));
  WitnessSearchConfig cfg = parse_search_config(p.at("config"), 0);
  const int n = p.at("n").get<int>();
  ConstantEstimate est = rbound_lower(maps, n, cfg);
  return estimate_results("rbound", maps.front().domain, est.noise, n, est, cfg);
}

json run_growth(const json& p) {
  const std::string constant = p.at("constant").get<std::string>();
  NoiseSpec noise = parse_noise(p.at("noise"));
  WitnessSearchConfig cfg = parse_search_config(p.at("config"), 0);
  json rows = json::array();
  for (int n : p.at("ns").get<std::vector<int>>()) {
    json fam = p.at("space_family");
    fam["dim"] = n;
    NormedSpace space = parse_space(fam);
    ConstantEstimate est = constant == "type2" ? type2_lower(space, noise, n, cfg)
                                               : cotype2_lower(space, noise, n, cfg);
    rows.push_back(json{{"n", n},
                        {"lower_bound", est.lower_bound},
                        {"std_error", ratio_std_error(constant, est.lower_bound, est.numerator)}});
  }
  return json{{"constant", constant}, {"noise", noise}, {"rows", rows}};
}

json check_entry(const std::string& name, bool passed, json details = json::object()) {
  details["name"] = name;
  details["passed"] = passed;
  return details;
}

json run_verify(const json& p, std::uint64_t seed) {
  const double eps = p.at("eps").get<double>();
  const std::uint64_t sector_samples = p.at("sector_samples").get<std::uint64_t>();
  const std::uint64_t separation_trials = p.at("separation_trials").get<std::uint64_t>();
  const std::uint64_t lip_samples = p.at("lip_samples").get<std::uint64_t>();
  const int refine_iters = p.at("refine_iters").get<int>();
  const double sqrt2 = std::sqrt(2.0);
  json checks = json::array();

  // the theorem-1 proof objects over the equiangular plane sections
  Embedding emb = equiangular_embedding(6);
  const double want = 1.0 / std::cos(std::acos(-1.0) / 12.0);
  checks.push_back(check_entry(
      "equiangular_distortion",
      std::fabs(emb.norm_upper - want) <= 1e-12 && emb.gain_lower == 1.0,
      json{{"norm_upper", emb.norm_upper}, {"expected", want}}));

  SeparationReport sep = separation_check(emb, separation_trials, seed);
  checks.push_back(check_entry("separation", sep.passed && sep.min_ratio >= 1.0 - 1e-9,
                               json{{"report", sep}}));

  VectorTuple centers = embedded_basis(emb);
  NormedSpace Y = NormedSpace::lp(1.0, 2);
  VectorTuple targets(Y, {Vec{1.0, 0.0}, Vec{0.0, 1.0}});
  std::vector<double> scales{1.0, 2.0};
  LipschitzFn sector = make_sector_bump(centers, targets, scales);

  {
    double worst = 0.0;
    Vec scaled(2ul * 3);  // centers live in l_inf^6
    scaled.assign(static_cast<std::size_t>(centers.dim()), 0.0);
    for (int j = 0; j < centers.n(); ++j) {
      for (std::size_t i = 0; i < scaled.size(); ++i)
        scaled[i] = scales[static_cast<std::size_t>(j)] *
                    centers.vectors[static_cast<std::size_t>(j)][i];
      Vec got = sector.eval(scaled);
      for (int i = 0; i < Y.dim(); ++i)
        worst = std::max(worst,
                         std::fabs(got[static_cast<std::size_t>(i)] -
                                   scales[static_cast<std::size_t>(j)] *
                                       targets.vectors[static_cast<std::size_t>(j)]
                                                      [static_cast<std::size_t>(i)]));
    }
    checks.push_back(
        check_entry("sector_interpolation", worst <= 1e-12, json{{"max_abs_error", worst}}));
  }

  {
    std::uint64_t multi = 0;
    double radius = 0.0;
    for (int j = 0; j < centers.n(); ++j)
      radius = std::max(radius, 2.0 * scales[static_cast<std::size_t>(j)] *
                                     (1.0 + centers.norm(j)));
    const std::uint64_t rayish = sector_samples / 2;
    Vec x(static_cast<std::size_t>(centers.dim()));
    for (std::uint64_t s = 0; s < sector_samples; ++s) {
      if (s < rayish) {
        const int j = static_cast<int>(s % static_cast<std::uint64_t>(centers.n()));
        auto u = rng::uniforms2(seed, rng::streams::scenario, s, 1);
        const double t = 3.0 * u[0];
        for (std::size_t i = 0; i < x.size(); ++i)
          x[i] = t * centers.vectors[static_cast<std::size_t>(j)][i] +
                 0.3 * rng::gaussian_at(seed, rng::streams::scenario, s,
                                        2 + static_cast<std::uint32_t>(i));
      } else {
        for (std::size_t i = 0; i < x.size(); ++i)
          x[i] = 0.5 * radius *
                 rng::gaussian_at(seed, rng::streams::scenario, s,
                                  2 + static_cast<std::uint32_t>(i));
      }
      if (sector_indicator(sector, x).size() > 1) ++multi;
    }
    checks.push_back(check_entry("sector_disjoint", multi == 0,
                                 json{{"samples", sector_samples}, {"overlaps", multi}}));
  }

  {
    LipLowerEstimate low = lip_constant_lower_mc(sector, lip_samples, refine_iters, seed);
    checks.push_back(check_entry("sector_lip",
                                 low.value <= sqrt2 + 1e-9 && low.value >= 1.0,
                                 json{{"lower", low.value}, {"upper", sqrt2}}));
    Vec zero(static_cast<std::size_t>(centers.dim()), 0.0);
    Vec at0 = sector.eval(zero);
    checks.push_back(check_entry("sector_eval_zero", Y.norm(at0) == 0.0, json::object()));
  }

  {
    std::vector<double> lengths{0.8, 1.5};
    VectorTuple rcenters = embedded_basis(emb, lengths);
    VectorTuple rtargets(Y, {Vec{0.8, 0.0}, Vec{0.0, 1.5}});
    LipschitzFn ray = make_ray_bump(rcenters, rtargets, eps);
    const double leps = ray_bump_lip_bound(eps);

    double worst = 0.0;
    for (int j = 0; j < rcenters.n(); ++j) {
      Vec got = ray.eval(rcenters.vectors[static_cast<std::size_t>(j)]);
      for (int i = 0; i < Y.dim(); ++i)
        worst = std::max(worst, std::fabs(got[static_cast<std::size_t>(i)] -
                                          rtargets.vectors[static_cast<std::size_t>(j)]
                                                          [static_cast<std::size_t>(i)]));
    }
    checks.push_back(
        check_entry("ray_interpolation", worst <= 1e-12, json{{"max_abs_error", worst}}));

    double hom = 0.0;
    Vec tx(static_cast<std::size_t>(rcenters.dim()));
    for (int j = 0; j < rcenters.n(); ++j) {
      Vec base = ray.eval(rcenters.vectors[static_cast<std::size_t>(j)]);
      for (double t : {0.1, 1.0, 10.0}) {
        for (std::size_t i = 0; i < tx.size(); ++i)
          tx[i] = t * rcenters.vectors[static_cast<std::size_t>(j)][i];
        Vec got = ray.eval(tx);
        for (int i = 0; i < Y.dim(); ++i)
          hom = std::max(hom, std::fabs(got[static_cast<std::size_t>(i)] -
                                        t * base[static_cast<std::size_t>(i)]) /
                                  std::max(1.0, t));
      }
    }
    checks.push_back(check_entry("ray_homogeneity", hom <= 1e-12, json{{"max_error", hom}}));

    LipLowerEstimate low = lip_constant_lower_mc(ray, lip_samples, refine_iters, seed);
    checks.push_back(check_entry("ray_lip", low.value <= leps + 1e-9,
                                 json{{"lower", low.value}, {"upper", leps}}));
    Vec zero(static_cast<std::size_t>(rcenters.dim()), 0.0);
    checks.push_back(check_entry("ray_eval_zero", Y.norm(ray.eval(zero)) == 0.0, json::object()));
  }

  {
    NormedSpace X = NormedSpace::linf(2);
    VectorTuple pts(X, {Vec{0.0, 0.0}, Vec{1.0, 0.0}, Vec{1.0, 1.0}});
    NormedSpace R = NormedSpace::lp(1.0, 1);
    VectorTuple vals(R, {Vec{0.0}, Vec{1.0}, Vec{3.0}});
    const double q = finite_data_quotient(pts, vals);
    checks.push_back(check_entry("quotient_example", q == 3.0, json{{"quotient", q}}));

    LipschitzFn ms = make_mcshane(pts, {0.0, 1.0, 3.0}, q, R, Vec{1.0});
    double worst = 0.0;
    const std::vector<double> want_vals{0.0, 1.0, 3.0};
    for (int j = 0; j < pts.n(); ++j) {
      Vec got = ms.eval(pts.vectors[static_cast<std::size_t>(j)]);
      worst = std::max(worst, std::fabs(got[0] - want_vals[static_cast<std::size_t>(j)]));
    }
    checks.push_back(check_entry("mcshane_reproduces", worst == 0.0,
                                 json{{"max_abs_error", worst}}));
  }

  {
    NormedSpace X = NormedSpace::lp(2.0, 3);
    NormedSpace Yn = NormedSpace::lp(2.0, 2);
    LipschitzFn nf = make_norm_functional(X, Yn, Vec{1.0, 0.0});
    LipLowerEstimate low = lip_constant_lower_mc(nf, lip_samples, refine_iters, seed);
    checks.push_back(check_entry("norm_functional_lip",
                                 low.value <= 1.0 + 1e-9 && low.value >= 0.99,
                                 json{{"lower", low.value}}));
  }

  bool all = true;
  for (const auto& c : checks) all = all && c.at("passed").get<bool>();
  return json{{"checks", checks}, {"all_pass", all}};
}

json dispatch(const Scenario& s, const json& resolved) {
  if (s.command == "estimate-type") return run_estimate(resolved, true);
  if (s.command == "estimate-cotype") return run_estimate(resolved, false);
  if (s.command == "transfer-ratio") return run_transfer(resolved, s.seed);
  if (s.command == "counterexample-search") return run_counterexample(resolved);
  if (s.command == "gamma-norm") return run_gamma_norm(resolved, s.seed);
  if (s.command == "rbound") return run_rbound(resolved);
  if (s.command == "growth-curve") return run_growth(resolved);
  if (s.command == "verify-constructions") return run_verify(resolved, s.seed);
  throw input_error("unknown command '" + s.command + "'");
}

std::string joined(const std::vector<std::string>& msgs) {
  std::string out;
  for (const auto& m : msgs) {
    if (!out.empty()) out += "; ";
    out += m;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_commands() { return kCommands; }

Validation validate_scenario(const json& scenario) {
  Validation v;
  if (!scenario.is_object()) {
    v.errors.push_back("scenario: must be a JSON object");
    return v;
  }
  if (!scenario.contains("command") || !scenario.at("command").is_string()) {
    v.errors.push_back("command: missing or not a string");
    return v;
  }
  const std::string command = scenario.at("command").get<std::string>();
  std::uint64_t seed = 0;
  if (!scenario.contains("seed")) {
    v.warnings.push_back("seed: missing, defaulted to 0");
  } else if (!scenario.at("seed").is_number_unsigned() && !scenario.at("seed").is_number_integer()) {
    v.errors.push_back("seed: must be an unsigned integer");
  } else {
    seed = scenario.at("seed").get<std::uint64_t>();
  }
  const json params = scenario.value("parameters", json::object());
  if (!params.is_object()) {
    v.errors.push_back("parameters: must be an object");
    return v;
  }
  resolve_params(command, params, seed, v);
  return v;
}

Scenario parse_scenario(const json& scenario) {
  Validation v = validate_scenario(scenario);
  if (!v.ok()) {
    if (v.errors.empty()) throw capacity_error(joined(v.capacity));
    throw input_error(joined(v.errors) +
                      (v.capacity.empty() ? "" : "; " + joined(v.capacity)));
  }
  Scenario s;
  s.command = scenario.at("command").get<std::string>();
  s.parameters = scenario.value("parameters", json::object());
  s.seed = scenario.value("seed", std::uint64_t{0});
  s.output_path = scenario.value("output_path", std::string());
  return s;
}

nlohmann::json run_scenario(const Scenario& s, const RunOptions& opt) {
  if (opt.workers > 0) par::set_worker_count(opt.workers);

  Validation v;
  json resolved = resolve_params(s.command, s.parameters, s.seed, v);
  if (!v.ok()) {
    if (v.errors.empty()) throw capacity_error(joined(v.capacity));
    throw input_error(joined(v.errors));
  }

  const auto t0 = std::chrono::steady_clock::now();
  json results = dispatch(s, resolved);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string report_path = s.output_path;
  if (report_path.empty()) report_path = opt.out_dir + "/" + s.command + "-report.json";

  json report{{"schema", std::string(kReportSchema)},
              {"scenario", json{{"command", s.command},
                                {"parameters", resolved},
                                {"seed", s.seed},
                                {"output_path", report_path}}},
              {"results", results},
              {"environment",
               json{{"version", std::string(kVersion)},
                    {"seed", s.seed},
                    {"workers", par::worker_count()},
                    {"kernel_backend",
                     std::string(kernels::backend_name(kernels::active_backend()))}}},
              {"timing", json{{"seconds", secs}}}};

  if (opt.write_files) {
    std::filesystem::create_directories(
        std::filesystem::path(report_path).parent_path().empty()
            ? "."
            : std::filesystem::path(report_path).parent_path());
    std::ofstream out(report_path);
    if (!out) throw input_error("cannot write report to " + report_path);
    out << report.dump(2) << "\n";

    if (s.command == "growth-curve") {
      std::filesystem::path csv_path(report_path);
      csv_path.replace_extension(".csv");
      std::ofstream csv(csv_path);
      csv << "n,lower_bound,std_error\n";
      for (const auto& row : results.at("rows"))
        csv << row.at("n").get<int>() << "," << row.at("lower_bound").get<double>() << ","
            << row.at("std_error").get<double>() << "\n";
    }
  }
  return report;
}

}  // namespace banach
