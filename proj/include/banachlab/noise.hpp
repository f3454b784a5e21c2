#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "banachlab/rng.hpp"

namespace banach {

// Symmetric scalar noise family with unit second moment, fixed analytically
// at construction (never by sampling). Draws are a pure function of
// (seed, stream, sample index), so chunked parallel estimation reproduces
// the serial stream.
class NoiseSpec {
 public:
  enum class Family { gaussian, rademacher, uniform, discrete_symmetric };

  NoiseSpec() : family_(Family::gaussian) {}

  static NoiseSpec gaussian() { return NoiseSpec(Family::gaussian); }
  static NoiseSpec rademacher() { return NoiseSpec(Family::rademacher); }
  // uniform on [-sqrt(3), sqrt(3)]: unit variance
  static NoiseSpec uniform() { return NoiseSpec(Family::uniform); }
  // atoms (value, prob): must be symmetric under negation, sum to one, and
  // have unit second moment, all within 1e-12
  static NoiseSpec discrete_symmetric(std::vector<std::pair<double, double>> atoms);

  Family family() const { return family_; }
  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

  // E|xi|: analytic per family, direct expectation for discrete atoms.
  double first_absolute_moment() const;

  // out.size() i.i.d. draws for one sample index.
  void fill(std::span<double> out, std::uint64_t seed, std::uint64_t index,
            std::uint32_t stream = rng::streams::noise) const;

 private:
  explicit NoiseSpec(Family f) : family_(f) {}

  Family family_;
  std::vector<std::pair<double, double>> atoms_;
  std::vector<double> cdf_;  // cumulative probabilities for discrete sampling
};

std::vector<double> sample_noise(const NoiseSpec& spec, int n, std::uint64_t seed,
                                 std::uint64_t index);

}  // namespace banach
