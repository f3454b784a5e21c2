#pragma once

#include <cstdint>

#include "banachlab/noise.hpp"
#include "banachlab/space.hpp"

namespace banach {

struct SumEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of E || sum_j xi_j x_j ||^2. Deterministic in
// (tuple, spec, samples, seed, stream) for any worker count.
SumEstimate second_moment_mc(const VectorTuple& tuple, const NoiseSpec& spec,
                             std::uint64_t samples, std::uint64_t seed,
                             std::uint32_t stream = rng::streams::noise);

inline constexpr int kMaxExactSigns = 24;

// Exact average of || sum_j eps_j x_j ||^2 over all sign patterns; the
// brute-force oracle for Rademacher sums. Throws capacity_error for n > 24.
double second_moment_exact_rademacher(const VectorTuple& tuple);

}  // namespace banach
