#include "banachlab/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace banach::kernels {
namespace {

// No global __m256d constants: nothing in this TU may execute AVX
// instructions before the runtime cpu check passes.

inline __m256d abs_mask() {
  return _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
}

// [a0,a1,a2,a3] -> (a0+a2) + (a1+a3), matching the scalar reference.
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(s, s);
  return _mm_cvtsd_f64(_mm_add_sd(s, sh));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_max_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(s, s);
  return _mm_cvtsd_f64(_mm_max_sd(s, sh));
}

double sum_abs_(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d mask = abs_mask();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), mask));
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double sum_sq_(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double max_abs_(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d mask = abs_mask();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), mask));
  double s = hmax(acc);
  for (; i < n; ++i) s = std::max(s, std::fabs(x[i]));
  return s;
}

double dot_(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double wsum_abs_(const double* x, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d mask = abs_mask();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_and_pd(_mm256_loadu_pd(x + i), mask);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), v));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * std::fabs(x[i]);
  return s;
}

double wsum_sq_(const double* x, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(v, v)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * (x[i] * x[i]);
  return s;
}

double wmax_abs_(const double* x, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d mask = abs_mask();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_and_pd(_mm256_loadu_pd(x + i), mask);
    acc = _mm256_max_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), v));
  }
  double s = hmax(acc);
  for (; i < n; ++i) s = std::max(s, w[i] * std::fabs(x[i]));
  return s;
}

}  // namespace

namespace detail {

const KernelTable* avx2_table() {
  static const KernelTable t{sum_abs_, sum_sq_, max_abs_, dot_,
                             axpy_,    wsum_abs_, wsum_sq_, wmax_abs_};
  return &t;
}

}  // namespace detail
}  // namespace banach::kernels

#else

namespace banach::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace banach::kernels::detail

#endif
