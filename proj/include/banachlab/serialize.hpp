#pragma once

#include <nlohmann/json_fwd.hpp>

#include "banachlab/constants.hpp"
#include "banachlab/geometry.hpp"
#include "banachlab/lipfun.hpp"
#include "banachlab/noise.hpp"
#include "banachlab/radonify.hpp"
#include "banachlab/randomsum.hpp"
#include "banachlab/space.hpp"

// JSON wire formats. Vectors are arrays, matrices row-major nested arrays,
// spaces {"kind":"lp","p":2.0,"dim":4} with "inf" standing in for p = inf.

namespace banach {

void to_json(nlohmann::json& j, const NormedSpace& s);
void to_json(nlohmann::json& j, const VectorTuple& t);
void to_json(nlohmann::json& j, const LinearMap& m);
void to_json(nlohmann::json& j, const NoiseSpec& n);
void to_json(nlohmann::json& j, const SumEstimate& e);
void to_json(nlohmann::json& j, const Embedding& e);
void to_json(nlohmann::json& j, const SeparationReport& r);
void to_json(nlohmann::json& j, const LipschitzFn& f);
void to_json(nlohmann::json& j, const LipLowerEstimate& e);
void to_json(nlohmann::json& j, const SimpleFunction& phi);
void to_json(nlohmann::json& j, const ConstantEstimate& c);
void to_json(nlohmann::json& j, const TransferRatio& t);
void to_json(nlohmann::json& j, const LiftRatio& r);
void to_json(nlohmann::json& j, const EllNormResult& r);

NormedSpace parse_space(const nlohmann::json& j);
NoiseSpec parse_noise(const nlohmann::json& j);
// vectors under key "vectors" (or a bare array) in the given space
VectorTuple parse_tuple(const NormedSpace& space, const nlohmann::json& j);
LinearMap parse_linear_map(const nlohmann::json& j);
LipschitzFn parse_lipschitz(const nlohmann::json& j);
SimpleFunction parse_simple_function(const nlohmann::json& j);
WitnessSearchConfig parse_search_config(const nlohmann::json& j, std::uint64_t default_seed);

}  // namespace banach
