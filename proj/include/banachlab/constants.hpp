#pragma once

#include <cstdint>
#include <vector>

#include "banachlab/lipfun.hpp"
#include "banachlab/noise.hpp"
#include "banachlab/randomsum.hpp"
#include "banachlab/space.hpp"

namespace banach {

struct WitnessSearchConfig {
  int restarts = 32;
  int iters = 200;
  double step = 0.25;
  std::uint64_t samples_per_eval = 4096;
  std::uint64_t final_samples = 100000;
  std::uint64_t seed = 0;
};

// Lower bound with the witness that attains it. lower_bound comes from a
// fresh-seed re-evaluation of the witness (or exact sign enumeration for
// Rademacher noise with n <= 24), never from the search's own objective.
struct ConstantEstimate {
  double lower_bound;
  VectorTuple witness;
  std::vector<double> scales;  // used by the counterexample assembly
  NoiseSpec noise;
  SumEstimate numerator;    // E || sum xi x ||^2 side
  SumEstimate denominator;  // sum ||x||^2 side (std_error 0 when exact)
};

// sup over tuples of (E||sum xi_j x_j||^2)^(1/2) / (sum ||x_j||^2)^(1/2),
// searched by random restarts plus blockwise hill climbing.
ConstantEstimate type2_lower(const NormedSpace& space, const NoiseSpec& noise, int n,
                             const WitnessSearchConfig& cfg);

// Same search for the reciprocal ratio.
ConstantEstimate cotype2_lower(const NormedSpace& space, const NoiseSpec& noise, int n,
                               const WitnessSearchConfig& cfg);

// Restricted search over tuples with all norms n^(-1/2); equals the Gaussian
// type-2 constant in the limit. Gaussian or Rademacher noise only.
ConstantEstimate type2_normalized_sup(const NormedSpace& space, const NoiseSpec& noise, int n,
                                      const WitnessSearchConfig& cfg);

struct TransferRatio {
  double ratio = 0.0;
  double lip_upper = 0.0;
  double margin = 0.0;  // 4-sigma propagated Monte Carlo margin on the ratio
  SumEstimate numerator;
  SumEstimate denominator;
};

// (E||sum xi_j a_j^{-1} f(a_j x_j)||^2)^(1/2) /
// (||f||_Lip (E||sum xi_j x_j||^2)^(1/2)), numerator and denominator on
// common noise draws.
TransferRatio transfer_ratio(const LipschitzFn& f, const VectorTuple& tuple,
                             std::span<const double> scales, const NoiseSpec& noise,
                             std::uint64_t samples, std::uint64_t seed);

struct CounterexampleResult {
  TransferRatio transfer;
  VectorTuple centers;  // x_j = T e_j
  VectorTuple targets;  // unit y_j from a type-2 witness of Y
  std::vector<double> scales;
  double embedding_norm_upper = 1.0;
  double embedding_gain_lower = 1.0;
  // second moment of the bare targets on the numerator's draws; equals the
  // numerator bit for bit because f(x_j) = y_j exactly when a_j = 1
  SumEstimate target_second_moment;
};

// Assembles the Dvoretzky embedding + sector bump exactly as the transfer
// construction does and reports the achieved ratio; values well above 1
// exhibit the non-Hilbertian blow-up.
CounterexampleResult transfer_counterexample_search(const NormedSpace& X, const NormedSpace& Y,
                                                    int n, double eps,
                                                    const WitnessSearchConfig& cfg);

// sup over tuples of (E||sum r_j T_j x_j||^2 / E||sum r_j x_j||^2)^(1/2);
// operators cycled when the family is shorter than the tuple.
ConstantEstimate rbound_lower(const std::vector<LinearMap>& family, int n,
                              const WitnessSearchConfig& cfg);

}  // namespace banach
