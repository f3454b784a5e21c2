#include "banachlab/serialize.hpp"

#include <nlohmann/json.hpp>

#include "banachlab/errors.hpp"

namespace banach {

using nlohmann::json;

void to_json(json& j, const NormedSpace& s) {
  j = json::object();
  j["kind"] = s.kind() == NormedSpace::Kind::lp ? "lp" : "weighted_lp";
  if (s.is_inf())
    j["p"] = "inf";
  else
    j["p"] = s.p();
  j["dim"] = s.dim();
  if (s.kind() == NormedSpace::Kind::weighted_lp) j["weights"] = s.weights();
}

void to_json(json& j, const VectorTuple& t) {
  j = json{{"space", t.space}, {"vectors", t.vectors}};
}

void to_json(json& j, const LinearMap& m) {
  std::vector<Vec> rows;
  rows.reserve(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) {
    Vec row(static_cast<std::size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m.at(r, c);
    rows.push_back(std::move(row));
  }
  j = json{{"domain", m.domain}, {"codomain", m.codomain}, {"matrix", rows}};
}

void to_json(json& j, const NoiseSpec& n) {
  switch (n.family()) {
    case NoiseSpec::Family::gaussian:
      j = json{{"family", "gaussian"}};
      return;
    case NoiseSpec::Family::rademacher:
      j = json{{"family", "rademacher"}};
      return;
    case NoiseSpec::Family::uniform:
      j = json{{"family", "uniform"}};
      return;
    case NoiseSpec::Family::discrete_symmetric: {
      json atoms = json::array();
      for (auto& [v, p] : n.atoms()) atoms.push_back(json::array({v, p}));
      j = json{{"family", "discrete_symmetric"}, {"atoms", atoms}};
      return;
    }
  }
}

void to_json(json& j, const SumEstimate& e) {
  j = json{{"mean", e.mean},
           {"std_error", e.std_error},
           {"samples", e.samples},
           {"seed", e.seed}};
}

void to_json(json& j, const Embedding& e) {
  j = json{{"map", e.map}, {"gain_lower", e.gain_lower}, {"norm_upper", e.norm_upper}};
  if (e.certification == Embedding::Certification::closed_form) {
    j["certification"] = "closed_form";
  } else {
    j["certification"] = "sampled";
    j["cert_points"] = e.cert_points;
    j["seed"] = e.seed;
  }
}

void to_json(json& j, const SeparationReport& r) {
  j = json{{"min_ratio", r.min_ratio}, {"trials", r.trials},   {"violations", r.violations},
           {"worst_j", r.worst_j},     {"worst_k", r.worst_k}, {"worst_a", r.worst_a},
           {"worst_b", r.worst_b},     {"passed", r.passed}};
}

void to_json(json& j, const LipschitzFn& f) {
  j = json{{"variant", std::string(f.variant_name())},
           {"domain", f.domain()},
           {"codomain", f.codomain()}};
  if (const auto* nf = std::get_if<NormFunctional>(&f.variant())) {
    j["y0"] = nf->y0;
  } else if (const auto* sb = std::get_if<SectorBump>(&f.variant())) {
    j["centers"] = sb->centers.vectors;
    j["targets"] = sb->targets.vectors;
    j["scales"] = sb->scales;
  } else if (const auto* rb = std::get_if<RayBump>(&f.variant())) {
    j["centers"] = rb->centers.vectors;
    j["targets"] = rb->targets.vectors;
    j["eps"] = rb->eps;
  } else if (const auto* ms = std::get_if<McShaneScalar>(&f.variant())) {
    j["points"] = ms->points.vectors;
    j["values"] = ms->values;
    j["lip"] = ms->lip;
    j["direction"] = ms->direction;
  }
}

void to_json(json& j, const LipLowerEstimate& e) {
  j = json{{"value", e.value}, {"witness_pair", json::array({e.x0, e.x1})}};
}

void to_json(json& j, const SimpleFunction& phi) {
  j = json{{"masses", phi.atoms.masses},
           {"values", phi.values.vectors},
           {"space", phi.values.space}};
}

void to_json(json& j, const ConstantEstimate& c) {
  j = json{{"lower_bound", c.lower_bound},
           {"witness", c.witness.vectors},
           {"noise", c.noise},
           {"numerator", c.numerator},
           {"denominator", c.denominator}};
  if (!c.scales.empty()) j["scales"] = c.scales;
}

void to_json(json& j, const TransferRatio& t) {
  j = json{{"ratio", t.ratio},
           {"lip_upper", t.lip_upper},
           {"margin", t.margin},
           {"numerator", t.numerator},
           {"denominator", t.denominator}};
}

void to_json(json& j, const LiftRatio& r) {
  j = json{{"ratio", r.ratio},
           {"margin", r.margin},
           {"numerator", r.numerator},
           {"denominator", r.denominator}};
}

void to_json(json& j, const EllNormResult& r) {
  j = json{{"value", r.value}, {"second_moment", r.second_moment}};
  if (r.exact)
    j["exact"] = *r.exact;
  else
    j["exact"] = nullptr;
}

namespace {

double parse_p(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return -1.0;  // marker
    throw input_error("p must be a number >= 1 or \"inf\"");
  }
  if (!j.is_number()) throw input_error("p must be a number >= 1 or \"inf\"");
  return j.get<double>();
}

}  // namespace

NormedSpace parse_space(const json& j) {
  if (!j.is_object()) throw input_error("space must be an object");
  const std::string kind = j.value("kind", "lp");
  if (!j.contains("p")) throw input_error("space: missing p");
  const double p = parse_p(j.at("p"));
  if (kind == "lp") {
    if (!j.contains("dim")) throw input_error("space: missing dim");
    const int dim = j.at("dim").get<int>();
    return p < 0.0 ? NormedSpace::linf(dim) : NormedSpace::lp(p, dim);
  }
  if (kind == "weighted_lp") {
    if (!j.contains("weights")) throw input_error("space: weighted_lp needs weights");
    Vec w = j.at("weights").get<Vec>();
    return p < 0.0 ? NormedSpace::weighted_linf(std::move(w))
                   : NormedSpace::weighted_lp(p, std::move(w));
  }
  throw input_error("space: unknown kind '" + kind + "'");
}

NoiseSpec parse_noise(const json& j) {
  if (j.is_null()) return NoiseSpec::gaussian();
  if (!j.is_object()) throw input_error("noise must be an object");
  const std::string fam = j.value("family", "gaussian");
  if (fam == "gaussian") return NoiseSpec::gaussian();
  if (fam == "rademacher") return NoiseSpec::rademacher();
  if (fam == "uniform") return NoiseSpec::uniform();
  if (fam == "discrete_symmetric") {
    if (!j.contains("atoms")) throw input_error("discrete noise needs atoms");
    std::vector<std::pair<double, double>> atoms;
    for (const auto& a : j.at("atoms"))
      atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    return NoiseSpec::discrete_symmetric(std::move(atoms));
  }
  throw input_error("noise: unknown family '" + fam + "'");
}

VectorTuple parse_tuple(const NormedSpace& space, const json& j) {
  const json& arr = j.is_object() && j.contains("vectors") ? j.at("vectors") : j;
  if (!arr.is_array()) throw input_error("tuple must be an array of vectors");
  std::vector<Vec> vs;
  for (const auto& v : arr) vs.push_back(v.get<Vec>());
  return VectorTuple(space, std::move(vs));
}

LinearMap parse_linear_map(const json& j) {
  NormedSpace dom = parse_space(j.at("domain"));
  NormedSpace cod = parse_space(j.at("codomain"));
  const json& rows = j.at("matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != cod.dim())
    throw input_error("matrix must have codomain-dim rows");
  Vec flat;
  flat.reserve(static_cast<std::size_t>(cod.dim()) * static_cast<std::size_t>(dom.dim()));
  for (const auto& row : rows) {
    Vec r = row.get<Vec>();
    if (static_cast<int>(r.size()) != dom.dim())
      throw input_error("matrix row length must equal domain dim");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return LinearMap(std::move(dom), std::move(cod), std::move(flat));
}

LipschitzFn parse_lipschitz(const json& j) {
  NormedSpace dom = parse_space(j.at("domain"));
  NormedSpace cod = parse_space(j.at("codomain"));
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "norm_functional")
    return make_norm_functional(dom, cod, j.at("y0").get<Vec>());
  if (variant == "sector_bump")
    return make_sector_bump(parse_tuple(dom, j.at("centers")), parse_tuple(cod, j.at("targets")),
                            j.at("scales").get<std::vector<double>>());
  if (variant == "ray_bump")
    return make_ray_bump(parse_tuple(dom, j.at("centers")), parse_tuple(cod, j.at("targets")),
                         j.at("eps").get<double>());
  if (variant == "mcshane_scalar")
    return make_mcshane(parse_tuple(dom, j.at("points")),
                        j.at("values").get<std::vector<double>>(), j.at("lip").get<double>(),
                        cod, j.at("direction").get<Vec>());
  throw input_error("lipschitz: unknown variant '" + variant + "'");
}

SimpleFunction parse_simple_function(const json& j) {
  NormedSpace space = parse_space(j.at("space"));
  MeasureAtoms atoms(j.at("masses").get<std::vector<double>>());
  return SimpleFunction(std::move(atoms), parse_tuple(space, j.at("values")));
}

WitnessSearchConfig parse_search_config(const json& j, std::uint64_t default_seed) {
  WitnessSearchConfig cfg;
  cfg.seed = default_seed;
  if (j.is_null()) return cfg;
  if (!j.is_object()) throw input_error("config must be an object");
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.iters = j.value("iters", cfg.iters);
  cfg.step = j.value("step", cfg.step);
  cfg.samples_per_eval = j.value("samples_per_eval", cfg.samples_per_eval);
  cfg.final_samples = j.value("final_samples", cfg.final_samples);
  cfg.seed = j.value("seed", cfg.seed);
  if (cfg.restarts < 1 || cfg.iters < 0 || !(cfg.step > 0.0) || cfg.samples_per_eval < 2 ||
      cfg.final_samples < 2)
    throw input_error("config: restarts >= 1, iters >= 0, step > 0, samples >= 2 required");
  return cfg;
}

}  // namespace banach
