#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "banachlab/space.hpp"

namespace banach {

// f(x) = ||x|| y0 for a fixed unit vector y0; Lipschitz constant 1.
struct NormFunctional {
  Vec y0;
};

// f(x) = sum_j psi_j(x) y_j with psi_j(x) = a_j max{0, 1 - sqrt(2) ||x/a_j - x_j||}.
// Unit targets y_j; interpolates f(a_j x_j) = a_j y_j; Lipschitz constant at
// most sqrt(2) when the centers are sqrt(a^2+b^2)-separated.
struct SectorBump {
  VectorTuple centers;
  VectorTuple targets;
  std::vector<double> scales;
};

// Ray-homogeneous bump: f(x) = sum_j phi_j(x) y_j / ||x_j|| with
// phi_j(x) = max{0, 1 - sqrt(2)(1+eps) d_j(x)} ||x||, phi_j(0) = 0, and
// d_j(x) = || x/||x|| - x_j/||x_j|| ||. f(a x_j) = a y_j for a > 0;
// Lipschitz constant at most L_eps = 2 sqrt(2) (1+eps) + 1.
struct RayBump {
  VectorTuple centers;
  VectorTuple targets;
  double eps;
};

// Scalar McShane extension g(x) = min_j (v_j + L ||x - p_j||), emitted along
// a fixed unit direction of the codomain.
struct McShaneScalar {
  VectorTuple points;
  std::vector<double> values;
  double lip;
  Vec direction;
};

class LipschitzFn {
 public:
  using Variant = std::variant<NormFunctional, SectorBump, RayBump, McShaneScalar>;

  LipschitzFn(NormedSpace domain, NormedSpace codomain, Variant v);

  const NormedSpace& domain() const { return domain_; }
  const NormedSpace& codomain() const { return codomain_; }
  const Variant& variant() const { return variant_; }
  std::string_view variant_name() const;

  Vec eval(std::span<const double> x) const;

  // Analytic Lipschitz bound of the construction: 1, sqrt(2), L_eps, or L.
  double lip_upper() const;

 private:
  NormedSpace domain_;
  NormedSpace codomain_;
  Variant variant_;
};

LipschitzFn make_norm_functional(NormedSpace domain, NormedSpace codomain, Vec y0);
LipschitzFn make_sector_bump(VectorTuple centers, VectorTuple targets,
                             std::vector<double> scales);
LipschitzFn make_ray_bump(VectorTuple centers, VectorTuple targets, double eps);
LipschitzFn make_mcshane(VectorTuple points, std::vector<double> values, double lip,
                         NormedSpace codomain, Vec direction);

inline double ray_bump_lip_bound(double eps) { return 2.0 * std::sqrt(2.0) * (1.0 + eps) + 1.0; }

// psi_j(x) of a SectorBump variant.
double sector_bump_psi(const LipschitzFn& f, int j, std::span<const double> x);

// Indices j with psi_j(x) > 0; at most one when the centers are separated.
std::vector<int> sector_indicator(const LipschitzFn& f, std::span<const double> x);

struct LipLowerEstimate {
  double value = 0.0;
  Vec x0, x1;  // witness pair attaining the bound
};

// Max of ||f(x)-f(x')|| / ||x-x'|| over sampled pairs plus local refinement;
// always a valid lower bound for the Lipschitz constant.
LipLowerEstimate lip_constant_lower_mc(const LipschitzFn& f, std::uint64_t samples,
                                       int refine_iters, std::uint64_t seed);

// max_{j != k} ||y_j - y_k|| / ||x_j - x_k||; input_error on coincident points.
double finite_data_quotient(const VectorTuple& points, const VectorTuple& values);

struct SectorSeparationReport {
  double min_ratio = 0.0;  // min ||a x_j - b x_k|| / sqrt(a^2+b^2) over samples
  std::uint64_t trials = 0;
  bool passed = true;
};

// Samples the separation precondition of the SectorBump centers.
SectorSeparationReport validate_sector_separation(const LipschitzFn& f, std::uint64_t trials,
                                                  std::uint64_t seed);

}  // namespace banach
