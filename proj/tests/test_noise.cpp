#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "banachlab/errors.hpp"
#include "banachlab/noise.hpp"

using namespace banach;

TEST_CASE("rademacher draws live on {-1, +1}") {
  auto xs = sample_noise(NoiseSpec::rademacher(), 3, 1, 0);
  REQUIRE(xs.size() == 3);
  for (double x : xs) CHECK((x == 1.0 || x == -1.0));
  // and both signs occur over many draws
  int pos = 0;
  for (int i = 0; i < 1000; ++i) {
    auto v = sample_noise(NoiseSpec::rademacher(), 1, 5, static_cast<std::uint64_t>(i));
    if (v[0] > 0) ++pos;
  }
  CHECK(pos > 400);
  CHECK(pos < 600);
}

TEST_CASE("draws are deterministic in (seed, index) and differ across them") {
  auto a = sample_noise(NoiseSpec::gaussian(), 8, 42, 7);
  auto b = sample_noise(NoiseSpec::gaussian(), 8, 42, 7);
  CHECK(a == b);
  CHECK(a != sample_noise(NoiseSpec::gaussian(), 8, 42, 8));
  CHECK(a != sample_noise(NoiseSpec::gaussian(), 8, 43, 7));
}

TEST_CASE("gaussian second moment is 1 within monte carlo error") {
  const int n = 100000;
  auto xs = sample_noise(NoiseSpec::gaussian(), n, 9, 0);
  double s1 = 0.0, s2 = 0.0;
  for (double x : xs) {
    s1 += x * x;
    s2 += x * x * x * x;
  }
  const double mean = s1 / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::fabs(mean - 1.0) <= 3.0 * se);
}

TEST_CASE("uniform family has support inside [-sqrt(3), sqrt(3)]") {
  auto xs = sample_noise(NoiseSpec::uniform(), 20000, 11, 0);
  const double lim = std::sqrt(3.0);
  double mn = 0.0, mx = 0.0;
  for (double x : xs) {
    CHECK(std::fabs(x) <= lim);
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  CHECK(mx > 0.99 * lim);
  CHECK(mn < -0.99 * lim);
}

TEST_CASE("discrete noise validates symmetry and normalization") {
  const double r2 = std::sqrt(2.0);
  auto ok = NoiseSpec::discrete_symmetric({{r2, 0.25}, {-r2, 0.25}, {0.0, 0.5}});
  CHECK(ok.family() == NoiseSpec::Family::discrete_symmetric);

  CHECK_THROWS_AS(NoiseSpec::discrete_symmetric({{1.0, 0.5}, {-2.0, 0.5}}), input_error);
  CHECK_THROWS_AS(NoiseSpec::discrete_symmetric({{1.0, 0.3}, {-1.0, 0.3}}), input_error);
  CHECK_THROWS_AS(NoiseSpec::discrete_symmetric({{2.0, 0.5}, {-2.0, 0.5}}), input_error);
  CHECK_THROWS_AS(NoiseSpec::discrete_symmetric({}), input_error);

  auto xs = sample_noise(ok, 5000, 13, 0);
  for (double x : xs) CHECK((x == r2 || x == -r2 || x == 0.0));
}

TEST_CASE("first absolute moments") {
  const double pi = std::acos(-1.0);
  CHECK(NoiseSpec::gaussian().first_absolute_moment() == std::sqrt(2.0 / pi));
  CHECK(NoiseSpec::rademacher().first_absolute_moment() == 1.0);
  CHECK(NoiseSpec::uniform().first_absolute_moment() ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  const double r2 = std::sqrt(2.0);
  auto d = NoiseSpec::discrete_symmetric({{r2, 0.25}, {-r2, 0.25}, {0.0, 0.5}});
  CHECK(d.first_absolute_moment() == doctest::Approx(r2 / 2.0).epsilon(1e-15));
}

TEST_CASE("sample_noise rejects n < 1") {
  CHECK_THROWS_AS(sample_noise(NoiseSpec::gaussian(), 0, 1, 0), input_error);
}
