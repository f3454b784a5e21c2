#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <vector>

#include "banachlab/kernels.hpp"
#include "banachlab/rng.hpp"

using namespace banach;

namespace {

std::vector<double> rand_vec(std::size_t n, std::uint64_t seed, double scale = 3.0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = scale * rng::gaussian_at(seed, rng::streams::noise, i);
  return v;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

// every vector length that straddles the 4-lane boundary, plus larger ones
const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9,
                                         15, 16, 17, 31, 33, 64, 67, 1023};

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(kernels::backend_available(kernels::Backend::scalar));
  CHECK(kernels::table(kernels::Backend::scalar).sum_abs != nullptr);
}

TEST_CASE("simd backends match the scalar reference bit for bit") {
  const auto& ref = kernels::table(kernels::Backend::scalar);
  for (auto backend : {kernels::Backend::avx2, kernels::Backend::neon}) {
    if (!kernels::backend_available(backend)) continue;
    const auto& simd = kernels::table(backend);
    INFO("backend ", kernels::backend_name(backend));
    for (std::size_t n : kSizes) {
      auto x = rand_vec(n, 11 + n);
      auto y = rand_vec(n, 23 + n);
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = 0.25 + i * 0.125;

      CHECK(bit_equal(ref.sum_abs(x.data(), n), simd.sum_abs(x.data(), n)));
      CHECK(bit_equal(ref.sum_sq(x.data(), n), simd.sum_sq(x.data(), n)));
      CHECK(bit_equal(ref.max_abs(x.data(), n), simd.max_abs(x.data(), n)));
      CHECK(bit_equal(ref.dot(x.data(), y.data(), n), simd.dot(x.data(), y.data(), n)));
      CHECK(bit_equal(ref.wsum_abs(x.data(), w.data(), n), simd.wsum_abs(x.data(), w.data(), n)));
      CHECK(bit_equal(ref.wsum_sq(x.data(), w.data(), n), simd.wsum_sq(x.data(), w.data(), n)));
      CHECK(bit_equal(ref.wmax_abs(x.data(), w.data(), n), simd.wmax_abs(x.data(), w.data(), n)));

      std::vector<double> ya = y, yb = y;
      ref.axpy(ya.data(), 1.7, x.data(), n);
      simd.axpy(yb.data(), 1.7, x.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(bit_equal(ya[i], yb[i]));
    }
  }
}

TEST_CASE("dispatched kernels follow the active backend") {
  const auto saved = kernels::active_backend();
  REQUIRE(kernels::set_backend(kernels::Backend::scalar));
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  auto x = rand_vec(37, 5);
  const double want = kernels::table(kernels::Backend::scalar).sum_abs(x.data(), x.size());
  CHECK(bit_equal(kernels::sum_abs(x.data(), x.size()), want));
  REQUIRE(kernels::set_backend(saved));
}

TEST_CASE("kernel values are correct on known inputs") {
  const std::vector<double> x = {3.0, -4.0, 0.0, 1.0};
  CHECK(kernels::sum_abs(x.data(), 4) == 8.0);
  CHECK(kernels::sum_sq(x.data(), 4) == 26.0);
  CHECK(kernels::max_abs(x.data(), 4) == 4.0);
  const std::vector<double> y = {1.0, 1.0, 2.0, -1.0};
  CHECK(kernels::dot(x.data(), y.data(), 4) == doctest::Approx(3.0 - 4.0 + 0.0 - 1.0));
  const std::vector<double> w = {2.0, 0.5, 1.0, 1.0};
  CHECK(kernels::wsum_abs(x.data(), w.data(), 4) == 9.0);
  CHECK(kernels::wmax_abs(x.data(), w.data(), 4) == 6.0);
  CHECK(kernels::wsum_sq(x.data(), w.data(), 4) == 2.0 * 9.0 + 0.5 * 16.0 + 1.0);
  CHECK(kernels::sum_abs(x.data(), 0) == 0.0);
  CHECK(kernels::max_abs(x.data(), 0) == 0.0);
}

TEST_CASE("general-p reduction matches a direct loop") {
  auto x = rand_vec(19, 3);
  double direct = 0.0;
  for (double v : x) direct += std::pow(std::fabs(v / 2.0), 3.0);
  CHECK(kernels::sum_abs_pow_scaled(x.data(), x.size(), 0.5, 3.0) ==
        doctest::Approx(direct).epsilon(1e-14));
}
