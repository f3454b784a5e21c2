#include "banachlab/kernels.hpp"

#if defined(__ARM_NEON) || defined(__ARM_NEON__)

#include <arm_neon.h>

#include <cmath>

// Two float64x2 accumulators hold lanes [a0,a1] and [a2,a3]; the reduction
// vadd + lane sum reproduces the scalar (a0+a2)+(a1+a3) tree exactly.

namespace banach::kernels {
namespace {

inline double hsum(float64x2_t lo01, float64x2_t hi23) {
  float64x2_t s = vaddq_f64(lo01, hi23);  // [a0+a2, a1+a3]
  return vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1);
}

inline double hmax(float64x2_t lo01, float64x2_t hi23) {
  float64x2_t s = vmaxq_f64(lo01, hi23);
  return std::max(vgetq_lane_f64(s, 0), vgetq_lane_f64(s, 1));
}

double sum_abs_(const double* x, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vaddq_f64(a01, vabsq_f64(vld1q_f64(x + i)));
    a23 = vaddq_f64(a23, vabsq_f64(vld1q_f64(x + i + 2)));
  }
  double s = hsum(a01, a23);
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double sum_sq_(const double* x, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t v0 = vld1q_f64(x + i);
    float64x2_t v1 = vld1q_f64(x + i + 2);
    a01 = vaddq_f64(a01, vmulq_f64(v0, v0));
    a23 = vaddq_f64(a23, vmulq_f64(v1, v1));
  }
  double s = hsum(a01, a23);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double max_abs_(const double* x, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vmaxq_f64(a01, vabsq_f64(vld1q_f64(x + i)));
    a23 = vmaxq_f64(a23, vabsq_f64(vld1q_f64(x + i + 2)));
  }
  double s = hmax(a01, a23);
  for (; i < n; ++i) s = std::max(s, std::fabs(x[i]));
  return s;
}

double dot_(const double* x, const double* y, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vaddq_f64(a01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    a23 = vaddq_f64(a23, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double s = hsum(a01, a23);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_(double* y, double a, const double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i)));
    vst1q_f64(y + i, t);
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double wsum_abs_(const double* x, const double* w, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vaddq_f64(a01, vmulq_f64(vld1q_f64(w + i), vabsq_f64(vld1q_f64(x + i))));
    a23 = vaddq_f64(a23, vmulq_f64(vld1q_f64(w + i + 2), vabsq_f64(vld1q_f64(x + i + 2))));
  }
  double s = hsum(a01, a23);
  for (; i < n; ++i) s += w[i] * std::fabs(x[i]);
  return s;
}

double wsum_sq_(const double* x, const double* w, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t v0 = vld1q_f64(x + i);
    float64x2_t v1 = vld1q_f64(x + i + 2);
    a01 = vaddq_f64(a01, vmulq_f64(vld1q_f64(w + i), vmulq_f64(v0, v0)));
    a23 = vaddq_f64(a23, vmulq_f64(vld1q_f64(w + i + 2), vmulq_f64(v1, v1)));
  }
  double s = hsum(a01, a23);
  for (; i < n; ++i) s += w[i] * (x[i] * x[i]);
  return s;
}

double wmax_abs_(const double* x, const double* w, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0), a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vmaxq_f64(a01, vmulq_f64(vld1q_f64(w + i), vabsq_f64(vld1q_f64(x + i))));
    a23 = vmaxq_f64(a23, vmulq_f64(vld1q_f64(w + i + 2), vabsq_f64(vld1q_f64(x + i + 2))));
  }
  double s = hmax(a01, a23);
  for (; i < n; ++i) s = std::max(s, w[i] * std::fabs(x[i]));
  return s;
}

}  // namespace

namespace detail {

const KernelTable* neon_table() {
  static const KernelTable t{sum_abs_, sum_sq_, max_abs_, dot_,
                             axpy_,    wsum_abs_, wsum_sq_, wmax_abs_};
  return &t;
}

}  // namespace detail
}  // namespace banach::kernels

#else

namespace banach::kernels::detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace banach::kernels::detail

#endif
