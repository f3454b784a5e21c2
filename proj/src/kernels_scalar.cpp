#include "banachlab/kernels.hpp"

#include <algorithm>
#include <cmath>

// Reference kernels. The 4-lane accumulation mirrors one 256-bit register
// (or two 128-bit NEON registers) so SIMD backends can match bit for bit.

namespace banach::kernels {
namespace {

template <class Term>
inline double reduce_sum(std::size_t n, Term term) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += term(i);
    a1 += term(i + 1);
    a2 += term(i + 2);
    a3 += term(i + 3);
  }
  double s = (a0 + a2) + (a1 + a3);
  for (; i < n; ++i) s += term(i);
  return s;
}

template <class Term>
inline double reduce_max(std::size_t n, Term term) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = std::max(a0, term(i));
    a1 = std::max(a1, term(i + 1));
    a2 = std::max(a2, term(i + 2));
    a3 = std::max(a3, term(i + 3));
  }
  double s = std::max(std::max(a0, a2), std::max(a1, a3));
  for (; i < n; ++i) s = std::max(s, term(i));
  return s;
}

double sum_abs_(const double* x, std::size_t n) {
  return reduce_sum(n, [x](std::size_t i) { return std::fabs(x[i]); });
}

double sum_sq_(const double* x, std::size_t n) {
  return reduce_sum(n, [x](std::size_t i) { return x[i] * x[i]; });
}

double max_abs_(const double* x, std::size_t n) {
  return reduce_max(n, [x](std::size_t i) { return std::fabs(x[i]); });
}

double dot_(const double* x, const double* y, std::size_t n) {
  return reduce_sum(n, [x, y](std::size_t i) { return x[i] * y[i]; });
}

void axpy_(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

double wsum_abs_(const double* x, const double* w, std::size_t n) {
  return reduce_sum(n, [x, w](std::size_t i) { return w[i] * std::fabs(x[i]); });
}

double wsum_sq_(const double* x, const double* w, std::size_t n) {
  return reduce_sum(n, [x, w](std::size_t i) { return w[i] * (x[i] * x[i]); });
}

double wmax_abs_(const double* x, const double* w, std::size_t n) {
  return reduce_max(n, [x, w](std::size_t i) { return w[i] * std::fabs(x[i]); });
}

}  // namespace

namespace detail {

const KernelTable& scalar_table() {
  static const KernelTable t{sum_abs_, sum_sq_, max_abs_, dot_,
                             axpy_,    wsum_abs_, wsum_sq_, wmax_abs_};
  return t;
}

}  // namespace detail

double sum_abs_pow_scaled(const double* x, std::size_t n, double inv_scale, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(x[i] * inv_scale), p);
  return s;
}

double wsum_abs_pow_scaled(const double* x, const double* w, std::size_t n, double inv_scale,
                           double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * std::pow(std::fabs(x[i] * inv_scale), p);
  return s;
}

}  // namespace banach::kernels
