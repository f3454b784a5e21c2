#pragma once

#include <cstdint>
#include <span>

#include "banachlab/space.hpp"

namespace banach {

// Linear T: l_2^n -> X normalized so the gain over the unit sphere is 1 and
// ||T|| <= 1 + eps. Closed-form constructions certify both bounds; random
// ones only sample them (certification == sampled is NOT a proof).
struct Embedding {
  enum class Certification { closed_form, sampled };

  LinearMap map;
  double gain_lower = 1.0;
  double norm_upper = 1.0;
  Certification certification = Certification::closed_form;
  std::uint64_t cert_points = 0;
  std::uint64_t seed = 0;

  int n() const { return map.cols(); }
};

inline constexpr int kEmbeddingMaxRetries = 50;
inline constexpr std::uint64_t kDefaultCertPoints = 20000;

// T: l_2^2 -> l_inf^N with rows (cos(k pi/N), sin(k pi/N)) scaled by
// 1/cos(pi/(2N)); min gain exactly 1 and ||T|| = 1/cos(pi/(2N)), both
// closed form.
Embedding equiangular_embedding(int N);

// Gaussian matrix rescaled so the sampled min of ||Tz|| over cert_points
// unit vectors is 1; retries until the sampled distortion is <= 1 + eps.
// Hilbert targets get exact orthonormal columns instead (distortion 1).
Embedding random_embedding(int n, const NormedSpace& target, double eps,
                           std::uint64_t cert_points = kDefaultCertPoints,
                           std::uint64_t seed = 0);

// The proof vectors x_j = len_j * T e_j (len_j = 1 by default).
VectorTuple embedded_basis(const Embedding& E, std::span<const double> lengths = {});

struct SeparationReport {
  double min_ratio = 0.0;  // min ||a x_j - b x_k|| / sqrt(a^2 + b^2)
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;  // ratio < gain_lower - tol
  int worst_j = -1;
  int worst_k = -1;
  double worst_a = 0.0;
  double worst_b = 0.0;
  bool passed = true;
};

inline constexpr double kSeparationTol = 1e-9;

// Samples pairs j != k and coefficients a, b in [-10, 10] and checks
// ||a x_j - b x_k|| >= gain_lower * sqrt(a^2 + b^2) - tol. Violations are
// reported as data, not exceptions.
SeparationReport separation_check(const Embedding& E, std::uint64_t trials, std::uint64_t seed);

}  // namespace banach
