#include "banachlab/randomsum.hpp"

#include <cmath>
#include <string>

#include "banachlab/errors.hpp"
#include "banachlab/kernels.hpp"
#include "banachlab/parallel.hpp"

namespace banach {

namespace {

struct Moments {
  double s1 = 0.0;
  double s2 = 0.0;
  Moments& operator+=(const Moments& o) {
    s1 += o.s1;
    s2 += o.s2;
    return *this;
  }
};

}  // namespace

SumEstimate second_moment_mc(const VectorTuple& tuple, const NoiseSpec& spec,
                             std::uint64_t samples, std::uint64_t seed, std::uint32_t stream) {
  if (samples < 2) throw input_error("second_moment_mc: samples must be >= 2");
  const std::size_t n = tuple.vectors.size();
  const std::size_t dim = static_cast<std::size_t>(tuple.dim());

  Moments total = par::chunked_reduce<Moments>(
      samples, [&](std::uint64_t begin, std::uint64_t end) {
        Moments part;
        std::vector<double> xi(n);
        Vec acc(dim);
        for (std::uint64_t i = begin; i < end; ++i) {
          spec.fill(xi, seed, i, stream);
          std::fill(acc.begin(), acc.end(), 0.0);
          for (std::size_t j = 0; j < n; ++j)
            kernels::axpy(acc.data(), xi[j], tuple.vectors[j].data(), dim);
          const double v = tuple.space.norm(acc);
          const double v2 = v * v;
          part.s1 += v2;
          part.s2 += v2 * v2;
        }
        return part;
      });

  const double s = static_cast<double>(samples);
  const double mean = total.s1 / s;
  double var = (total.s2 - total.s1 * total.s1 / s) / (s - 1.0);
  if (var < 0.0) var = 0.0;
  return SumEstimate{mean, std::sqrt(var / s), samples, seed};
}

double second_moment_exact_rademacher(const VectorTuple& tuple) {
  const int n = tuple.n();
  if (n > kMaxExactSigns)
    throw capacity_error("exact Rademacher enumeration capped at n = " +
                         std::to_string(kMaxExactSigns) + ", got n = " + std::to_string(n));
  const std::size_t dim = static_cast<std::size_t>(tuple.dim());
  const std::uint64_t patterns = 1ull << n;

  struct Acc {
    long double sum = 0.0L;
    Acc& operator+=(const Acc& o) {
      sum += o.sum;
      return *this;
    }
  };

  Acc total = par::chunked_reduce<Acc>(patterns, [&](std::uint64_t begin, std::uint64_t end) {
    Acc part;
    Vec acc(dim);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int j = 0; j < n; ++j) {
        const double sign = (mask >> j) & 1u ? -1.0 : 1.0;
        kernels::axpy(acc.data(), sign, tuple.vectors[static_cast<std::size_t>(j)].data(), dim);
      }
      const double v = tuple.space.norm(acc);
      part.sum += static_cast<long double>(v) * v;
    }
    return part;
  });

  return static_cast<double>(total.sum / static_cast<long double>(patterns));
}

}  // namespace banach
