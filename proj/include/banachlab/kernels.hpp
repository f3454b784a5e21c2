#pragma once

#include <cstddef>
#include <string_view>

namespace banach::kernels {

// Inner loops of every norm and random-sum evaluation. Each kernel exists as
// a scalar reference and as SIMD variants selected at runtime; all backends
// follow one accumulation contract so results are bit-identical:
//
//   four stride-4 partial sums over the largest multiple of four,
//   combined as (s0 + s2) + (s1 + s3), then tail elements left to right.
//
// axpy is elementwise (y[i] += a * x[i], no fused multiply-add); dot and the
// weighted reductions pin their per-element rounding order in the same way.

struct KernelTable {
  double (*sum_abs)(const double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double*, double, const double*, std::size_t);
  double (*wsum_abs)(const double*, const double*, std::size_t);
  double (*wsum_sq)(const double*, const double*, std::size_t);
  double (*wmax_abs)(const double*, const double*, std::size_t);
};

enum class Backend { scalar, avx2, neon };

bool backend_available(Backend b);
Backend active_backend();
// Returns false (and leaves the dispatch unchanged) if b is unavailable.
bool set_backend(Backend b);
std::string_view backend_name(Backend b);
// Table for a specific backend; throws input_error if unavailable.
const KernelTable& table(Backend b);

double sum_abs(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(double* y, double a, const double* x, std::size_t n);
double wsum_abs(const double* x, const double* w, std::size_t n);
double wsum_sq(const double* x, const double* w, std::size_t n);
double wmax_abs(const double* x, const double* w, std::size_t n);

// General-exponent reductions stay scalar (no vector pow). The inv_scale
// factor supports overflow-safe p-norms: sum over |x_i * inv_scale|^p.
double sum_abs_pow_scaled(const double* x, std::size_t n, double inv_scale, double p);
double wsum_abs_pow_scaled(const double* x, const double* w, std::size_t n, double inv_scale,
                           double p);

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();
}  // namespace detail

}  // namespace banach::kernels
