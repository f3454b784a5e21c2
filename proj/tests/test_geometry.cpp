#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "banachlab/errors.hpp"
#include "banachlab/geometry.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/space.hpp"

using namespace banach;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("equiangular closed forms") {
  Embedding e6 = equiangular_embedding(6);
  CHECK(e6.gain_lower == 1.0);
  CHECK(e6.norm_upper == doctest::Approx(1.0 / std::cos(kPi / 12.0)).epsilon(1e-15));
  CHECK(e6.certification == Embedding::Certification::closed_form);

  Embedding e2 = equiangular_embedding(2);
  CHECK(e2.norm_upper == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  double prev = e2.norm_upper;
  for (int N : {3, 5, 8, 16, 64, 256}) {
    const double cur = equiangular_embedding(N).norm_upper;
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(equiangular_embedding(1), input_error);
}

TEST_CASE("equiangular bounds agree with the operator-level norms") {
  Embedding e = equiangular_embedding(6);
  auto up = operator_norm(e.map);
  auto lo = min_gain(e.map);
  CHECK(up.certified);
  CHECK(lo.certified);
  CHECK(up.value == doctest::Approx(e.norm_upper).epsilon(1e-12));
  CHECK(lo.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("closed-form embeddings dominate the euclidean norm on samples") {
  Embedding e = equiangular_embedding(8);
  for (std::uint64_t t = 0; t < 10000; ++t) {
    auto u = rng::uniforms2(3, rng::streams::noise, t, 0);
    Vec z{2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0};
    const double nz = std::sqrt(z[0] * z[0] + z[1] * z[1]);
    Vec y = e.map.apply(z);
    CHECK(e.map.codomain.norm(y) >= nz * (1.0 - 1e-12));
  }
}

TEST_CASE("embedded basis vectors sit between 1 and 1+eps") {
  Embedding e = equiangular_embedding(6);
  VectorTuple xs = embedded_basis(e);
  REQUIRE(xs.n() == 2);
  for (int j = 0; j < 2; ++j) {
    CHECK(xs.norm(j) >= 1.0 - 1e-12);
    CHECK(xs.norm(j) <= e.norm_upper + 1e-12);
  }

  // lengths rescale the columns
  std::vector<double> lengths{0.5, 3.0};
  VectorTuple ys = embedded_basis(e, lengths);
  for (int j = 0; j < 2; ++j)
    CHECK(ys.norm(j) == doctest::Approx(lengths[static_cast<std::size_t>(j)] * xs.norm(j))
                            .epsilon(1e-15));
  CHECK_THROWS_AS(embedded_basis(e, std::vector<double>{1.0}), input_error);
}

TEST_CASE("hilbert targets get exact orthonormal embeddings") {
  Embedding e = random_embedding(2, NormedSpace::lp(2.0, 2), 0.01, 1000, 5);
  CHECK(e.certification == Embedding::Certification::closed_form);
  VectorTuple xs = embedded_basis(e);
  CHECK(xs.norm(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(xs.norm(1) == doctest::Approx(1.0).epsilon(1e-12));
  // identity-like: T e_1, T e_2 are orthonormal
  const double dot = xs.vectors[0][0] * xs.vectors[1][0] + xs.vectors[0][1] * xs.vectors[1][1];
  CHECK(dot == doctest::Approx(0.0).epsilon(1e-12));

  Embedding w = random_embedding(3, NormedSpace::weighted_lp(2.0, {2.0, 1.0, 0.5, 4.0}), 0.1,
                                 1000, 6);
  auto gain = min_gain(w.map);
  auto up = operator_norm(w.map);
  CHECK(gain.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(up.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("one-dimensional embeddings normalize to distortion one") {
  Embedding e = random_embedding(1, NormedSpace::lp(1.0, 16), 0.5, 2000, 11);
  CHECK(std::fabs(e.norm_upper - 1.0) <= 1e-9);
  VectorTuple xs = embedded_basis(e);
  CHECK(xs.norm(0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("random embeddings into l_inf and l_1 meet the sampled distortion") {
  Embedding e = random_embedding(2, NormedSpace::linf(64), 0.2, 20000, 19);
  CHECK(e.certification == Embedding::Certification::sampled);
  CHECK(e.norm_upper <= 1.2);
  CHECK(e.gain_lower == 1.0);
  // re-certify on a denser independent sample
  double mn = 1e300, mx = 0.0;
  for (std::uint64_t t = 0; t < 100000; ++t) {
    Vec z(2);
    z[0] = rng::gaussian_at(999, rng::streams::noise, t, 0);
    z[1] = rng::gaussian_at(999, rng::streams::noise, t, 1);
    const double nz = std::sqrt(z[0] * z[0] + z[1] * z[1]);
    if (nz < 1e-12) continue;
    const double v = e.map.codomain.norm(e.map.apply(z)) / nz;
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  CHECK(mx / mn <= 1.2 * 1.02);  // sampled bound holds up to sampling slack
  CHECK(mn >= 1.0 - 0.02);

  Embedding e1 = random_embedding(4, NormedSpace::lp(1.0, 512), 0.3, 20000, 23);
  CHECK(e1.norm_upper <= 1.3);
}

TEST_CASE("separation check on the equiangular construction") {
  Embedding e = equiangular_embedding(6);
  SeparationReport rep = separation_check(e, 10000, 3);
  CHECK(rep.passed);
  CHECK(rep.violations == 0);
  CHECK(rep.min_ratio >= 1.0 - 1e-9);
  CHECK(rep.trials > 9000);
}

TEST_CASE("separation check reports violations as data") {
  // a deliberately bad 'embedding': two nearly parallel columns
  LinearMap bad(NormedSpace::lp(2.0, 2), NormedSpace::lp(2.0, 2), {1.0, 0.999, 0.0, 0.01});
  Embedding e{bad, 1.0, 1.0, Embedding::Certification::sampled, 0, 0};
  SeparationReport rep = separation_check(e, 2000, 4);
  CHECK_FALSE(rep.passed);
  CHECK(rep.violations > 0);
  CHECK(rep.min_ratio < 1.0);
  CHECK(rep.worst_j >= 0);
}

TEST_CASE("degenerate single-column embedding has nothing to separate") {
  Embedding e = random_embedding(1, NormedSpace::lp(1.0, 8), 0.5, 1000, 29);
  SeparationReport rep = separation_check(e, 100, 0);
  CHECK(rep.trials == 0);
  CHECK(rep.passed);
}

TEST_CASE("construction failure surfaces as construction_error") {
  // distortion 1e-6 into l_inf^4 from 3 dimensions is hopeless
  CHECK_THROWS_AS(random_embedding(3, NormedSpace::linf(4), 1e-6, 500, 1),
                  construction_error);
}
