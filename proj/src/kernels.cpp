#include "banachlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "banachlab/errors.hpp"

namespace banach::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* table_or_null(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &detail::scalar_table();
    case Backend::avx2:
      return cpu_has_avx2() ? detail::avx2_table() : nullptr;
    case Backend::neon:
      return detail::neon_table();
  }
  return nullptr;
}

Backend pick_default() {
  if (const char* env = std::getenv("BANACHLAB_SIMD")) {
    if (std::strcmp(env, "scalar") == 0 && table_or_null(Backend::scalar)) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && table_or_null(Backend::avx2)) return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && table_or_null(Backend::neon)) return Backend::neon;
    // "auto" or unrecognized/unavailable: fall through to detection
  }
  if (table_or_null(Backend::avx2)) return Backend::avx2;
  if (table_or_null(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

struct Dispatch {
  std::atomic<const KernelTable*> table;
  std::atomic<Backend> backend;
  Dispatch() {
    Backend b = pick_default();
    backend.store(b);
    table.store(table_or_null(b));
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

inline const KernelTable& active() { return *dispatch().table.load(std::memory_order_relaxed); }

}  // namespace

bool backend_available(Backend b) { return table_or_null(b) != nullptr; }

Backend active_backend() { return dispatch().backend.load(std::memory_order_relaxed); }

bool set_backend(Backend b) {
  const KernelTable* t = table_or_null(b);
  if (!t) return false;
  dispatch().backend.store(b);
  dispatch().table.store(t);
  return true;
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "?";
}

const KernelTable& table(Backend b) {
  const KernelTable* t = table_or_null(b);
  if (!t) throw input_error("kernel backend unavailable on this host");
  return *t;
}

double sum_abs(const double* x, std::size_t n) { return active().sum_abs(x, n); }
double sum_sq(const double* x, std::size_t n) { return active().sum_sq(x, n); }
double max_abs(const double* x, std::size_t n) { return active().max_abs(x, n); }
double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
void axpy(double* y, double a, const double* x, std::size_t n) { active().axpy(y, a, x, n); }
double wsum_abs(const double* x, const double* w, std::size_t n) {
  return active().wsum_abs(x, w, n);
}
double wsum_sq(const double* x, const double* w, std::size_t n) {
  return active().wsum_sq(x, w, n);
}
double wmax_abs(const double* x, const double* w, std::size_t n) {
  return active().wmax_abs(x, w, n);
}

}  // namespace banach::kernels
