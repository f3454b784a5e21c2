#include "banachlab/noise.hpp"

#include <cmath>

#include "banachlab/errors.hpp"

namespace banach {

namespace {
constexpr double kTol = 1e-12;
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

NoiseSpec NoiseSpec::discrete_symmetric(std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty()) throw input_error("discrete noise needs at least one atom");
  double psum = 0.0, second = 0.0;
  for (auto& [v, p] : atoms) {
    if (!std::isfinite(v)) throw input_error("atom values must be finite");
    if (!(p > 0.0)) throw input_error("atom probabilities must be positive");
    psum += p;
    second += p * v * v;
  }
  if (std::fabs(psum - 1.0) > kTol) throw input_error("atom probabilities must sum to 1");
  if (std::fabs(second - 1.0) > kTol)
    throw input_error("discrete noise must have unit second moment");
  // symmetry: each atom needs a mirror of equal probability
  for (auto& [v, p] : atoms) {
    double matched = 0.0;
    for (auto& [v2, p2] : atoms)
      if (std::fabs(v2 + v) <= kTol) matched += p2;
    if (std::fabs(matched - p) > kTol)
      throw input_error("discrete noise must be symmetric about 0");
  }
  NoiseSpec spec(Family::discrete_symmetric);
  spec.atoms_ = std::move(atoms);
  spec.cdf_.reserve(spec.atoms_.size());
  double acc = 0.0;
  for (auto& [v, p] : spec.atoms_) {
    acc += p;
    spec.cdf_.push_back(acc);
  }
  spec.cdf_.back() = 1.0;
  return spec;
}

double NoiseSpec::first_absolute_moment() const {
  switch (family_) {
    case Family::gaussian:
      return std::sqrt(2.0 / std::acos(-1.0));
    case Family::rademacher:
      return 1.0;
    case Family::uniform:
      return kSqrt3 / 2.0;
    case Family::discrete_symmetric: {
      double m = 0.0;
      for (auto& [v, p] : atoms_) m += p * std::fabs(v);
      return m;
    }
  }
  return 0.0;
}

void NoiseSpec::fill(std::span<double> out, std::uint64_t seed, std::uint64_t index,
                     std::uint32_t stream) const {
  const std::size_t n = out.size();
  for (std::size_t j = 0; j < n; j += 2) {
    auto u = rng::uniforms2(seed, stream, index, static_cast<std::uint32_t>(j >> 1));
    const std::size_t take = std::min<std::size_t>(2, n - j);
    for (std::size_t k = 0; k < take; ++k) {
      const double uk = u[k];
      double v = 0.0;
      switch (family_) {
        case Family::gaussian:
          v = rng::inverse_normal_cdf(uk);
          break;
        case Family::rademacher:
          v = uk < 0.5 ? -1.0 : 1.0;
          break;
        case Family::uniform:
          v = kSqrt3 * (2.0 * uk - 1.0);
          break;
        case Family::discrete_symmetric: {
          std::size_t a = 0;
          while (a + 1 < cdf_.size() && uk >= cdf_[a]) ++a;
          v = atoms_[a].first;
          break;
        }
      }
      out[j + k] = v;
    }
  }
}

std::vector<double> sample_noise(const NoiseSpec& spec, int n, std::uint64_t seed,
                                 std::uint64_t index) {
  if (n < 1) throw input_error("sample_noise: n must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  spec.fill(out, seed, index);
  return out;
}

}  // namespace banach
