#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "banachlab/errors.hpp"
#include "banachlab/parallel.hpp"
#include "banachlab/randomsum.hpp"
#include "banachlab/rng.hpp"

using namespace banach;

namespace {

VectorTuple basis2(const NormedSpace& s) {
  return VectorTuple(s, {Vec{1.0, 0.0}, Vec{0.0, 1.0}});
}

VectorTuple random_tuple(const NormedSpace& s, int n, std::uint64_t seed) {
  std::vector<Vec> xs;
  for (int j = 0; j < n; ++j) {
    Vec x(static_cast<std::size_t>(s.dim()));
    for (int i = 0; i < s.dim(); ++i)
      x[static_cast<std::size_t>(i)] = rng::gaussian_at(seed, rng::streams::noise,
                                                        static_cast<std::uint64_t>(j),
                                                        static_cast<std::uint32_t>(i));
    xs.push_back(std::move(x));
  }
  return VectorTuple(s, std::move(xs));
}

// E max(|g1|,|g2|)^2 by 2-d composite Simpson; independent oracle for the
// l_inf^2 Gaussian example.
double quadrature_max_sq() {
  const int m = 400;  // intervals per axis over [0, 8]
  const double h = 8.0 / m;
  auto phi = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::acos(-1.0)); };
  auto w = [&](int i) { return i == 0 || i == m ? 1.0 : (i % 2 ? 4.0 : 2.0); };
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double x = i * h;
    for (int j = 0; j <= m; ++j) {
      const double y = j * h;
      const double v = std::max(x, y);
      acc += w(i) * w(j) * v * v * phi(x) * phi(y);
    }
  }
  return 4.0 * acc * h * h / 9.0;  // four symmetric quadrants
}

}  // namespace

TEST_CASE("exact rademacher enumeration on pinned examples") {
  CHECK(second_moment_exact_rademacher(basis2(NormedSpace::lp(1.0, 2))) == 4.0);
  CHECK(second_moment_exact_rademacher(basis2(NormedSpace::linf(2))) == 1.0);
  VectorTuple single(NormedSpace::lp(2.0, 3), {Vec{1.0, 2.0, 2.0}});
  CHECK(second_moment_exact_rademacher(single) == doctest::Approx(9.0).epsilon(1e-15));
}

TEST_CASE("enumeration capacity cap") {
  VectorTuple big(NormedSpace::lp(2.0, 1), std::vector<Vec>(25, Vec{1.0}));
  CHECK_THROWS_AS(second_moment_exact_rademacher(big), capacity_error);
}

TEST_CASE("mc estimator requires at least two samples") {
  CHECK_THROWS_AS(
      second_moment_mc(basis2(NormedSpace::lp(2.0, 2)), NoiseSpec::gaussian(), 1, 0),
      input_error);
}

TEST_CASE("hilbert identity: second moment equals sum of squared norms") {
  auto tuple = random_tuple(NormedSpace::lp(2.0, 4), 5, 77);
  const double want = tuple.sum_norm_sq();
  for (const NoiseSpec& noise : {NoiseSpec::gaussian(), NoiseSpec::rademacher(),
                                 NoiseSpec::uniform()}) {
    SumEstimate est = second_moment_mc(tuple, noise, 40000, 5);
    CHECK(std::fabs(est.mean - want) <= 4.0 * est.std_error);
  }
  // basis vectors in l_2^2 under gaussian noise: exactly 2 in expectation
  SumEstimate e2 = second_moment_mc(basis2(NormedSpace::lp(2.0, 2)), NoiseSpec::gaussian(),
                                    60000, 5);
  CHECK(std::fabs(e2.mean - 2.0) <= 3.0 * e2.std_error);
}

TEST_CASE("mc agrees with exact enumeration across seeds") {
  int hits = 0;
  const int tries = 50;
  for (int s = 0; s < tries; ++s) {
    const int n = 2 + (s % 7);
    auto tuple = random_tuple(s % 2 ? NormedSpace::lp(1.0, 3) : NormedSpace::linf(3), n,
                              static_cast<std::uint64_t>(1000 + s));
    const double exact = second_moment_exact_rademacher(tuple);
    SumEstimate est = second_moment_mc(tuple, NoiseSpec::rademacher(), 20000,
                                       static_cast<std::uint64_t>(s));
    if (std::fabs(est.mean - exact) <= 4.0 * est.std_error) ++hits;
  }
  CHECK(hits >= tries - 1);  // >= 99% of seeds within 4 sigma
}

TEST_CASE("l_inf^2 gaussian matches the quadrature oracle 1 + 2/pi") {
  const double oracle = quadrature_max_sq();
  const double analytic = 1.0 + 2.0 / std::acos(-1.0);
  CHECK(oracle == doctest::Approx(analytic).epsilon(2e-5));
  SumEstimate est = second_moment_mc(basis2(NormedSpace::linf(2)), NoiseSpec::gaussian(),
                                     200000, 21);
  CHECK(std::fabs(est.mean - analytic) <= 4.0 * est.std_error);
}

TEST_CASE("scaling by two reuses the draws and scales bit-exactly") {
  for (const NormedSpace& s :
       {NormedSpace::lp(1.0, 3), NormedSpace::lp(2.0, 3), NormedSpace::linf(3),
        NormedSpace::lp(3.0, 3), NormedSpace::weighted_lp(2.0, {1.0, 2.0, 0.5})}) {
    auto tuple = random_tuple(s, 4, 31);
    auto doubled = tuple;
    for (Vec& x : doubled.vectors)
      for (double& c : x) c *= 2.0;
    SumEstimate a = second_moment_mc(tuple, NoiseSpec::gaussian(), 5000, 9);
    SumEstimate b = second_moment_mc(doubled, NoiseSpec::gaussian(), 5000, 9);
    CHECK(b.mean == 4.0 * a.mean);
    CHECK(b.std_error == 4.0 * a.std_error);
  }
}

TEST_CASE("general scaling matches to relative 1e-12") {
  auto tuple = random_tuple(NormedSpace::lp(2.5, 4), 3, 41);
  auto scaled = tuple;
  const double alpha = 1.7;
  for (Vec& x : scaled.vectors)
    for (double& c : x) c *= alpha;
  SumEstimate a = second_moment_mc(tuple, NoiseSpec::uniform(), 4000, 2);
  SumEstimate b = second_moment_mc(scaled, NoiseSpec::uniform(), 4000, 2);
  CHECK(b.mean == doctest::Approx(alpha * alpha * a.mean).epsilon(1e-12));
}

TEST_CASE("estimator is bit-identical for any worker count") {
  auto tuple = random_tuple(NormedSpace::linf(4), 5, 51);
  const int saved = par::worker_count();
  par::set_worker_count(1);
  SumEstimate serial = second_moment_mc(tuple, NoiseSpec::gaussian(), 30000, 3);
  for (int w : {2, 5}) {
    par::set_worker_count(w);
    SumEstimate par_est = second_moment_mc(tuple, NoiseSpec::gaussian(), 30000, 3);
    CHECK(par_est.mean == serial.mean);
    CHECK(par_est.std_error == serial.std_error);
  }
  par::set_worker_count(saved);
}
