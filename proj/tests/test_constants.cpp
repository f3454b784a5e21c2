#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "banachlab/constants.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/randomsum.hpp"
#include "banachlab/rng.hpp"

using namespace banach;

namespace {

WitnessSearchConfig quick_cfg(std::uint64_t seed, int restarts = 6, int iters = 40) {
  WitnessSearchConfig cfg;
  cfg.restarts = restarts;
  cfg.iters = iters;
  cfg.samples_per_eval = 1024;
  cfg.final_samples = 20000;
  cfg.seed = seed;
  return cfg;
}

VectorTuple orthonormal_basis_tuple(int n) {
  std::vector<Vec> xs(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0.0));
  for (int j = 0; j < n; ++j) xs[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1.0;
  return VectorTuple(NormedSpace::lp(2.0, n), std::move(xs));
}

}  // namespace

TEST_CASE("hilbert calibration: all ratios pin to 1") {
  for (const NoiseSpec& noise : {NoiseSpec::gaussian(), NoiseSpec::rademacher()}) {
    ConstantEstimate t = type2_lower(NormedSpace::lp(2.0, 4), noise, 4, quick_cfg(1));
    CHECK(t.lower_bound == doctest::Approx(1.0).epsilon(0.03));
    ConstantEstimate c = cotype2_lower(NormedSpace::lp(2.0, 4), noise, 4, quick_cfg(2));
    CHECK(c.lower_bound == doctest::Approx(1.0).epsilon(0.03));
  }
  // rademacher with n <= 12 runs on exact enumeration: equality is exact
  ConstantEstimate t = type2_lower(NormedSpace::lp(2.0, 3), NoiseSpec::rademacher(), 3,
                                   quick_cfg(3, 2, 10));
  CHECK(t.lower_bound == 1.0);
  CHECK(t.numerator.std_error == 0.0);
}

TEST_CASE("l_1 type-2 witness: the basis reaches sqrt(n) exactly") {
  ConstantEstimate est = type2_lower(NormedSpace::lp(1.0, 3), NoiseSpec::rademacher(), 3,
                                     quick_cfg(5, 4, 40));
  CHECK(est.lower_bound >= std::sqrt(3.0) - 0.01);
  // witness replay through the exact oracle
  const double num = second_moment_exact_rademacher(est.witness);
  CHECK(std::sqrt(num / est.witness.sum_norm_sq()) ==
        doctest::Approx(est.lower_bound).epsilon(1e-12));
}

TEST_CASE("normalized supremum search") {
  // l_1^2 with rademacher noise: projected basis witness gives sqrt(2) exactly
  ConstantEstimate est = type2_normalized_sup(NormedSpace::lp(1.0, 2), NoiseSpec::rademacher(),
                                              2, quick_cfg(7, 4, 30));
  CHECK(est.lower_bound >= std::sqrt(2.0) - 0.01);
  CHECK(est.lower_bound <= std::sqrt(2.0) + 1e-9);
  for (int j = 0; j < 2; ++j)
    CHECK(est.witness.norm(j) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  // n = 1: the single unit vector forces ratio 1
  ConstantEstimate one = type2_normalized_sup(NormedSpace::linf(3), NoiseSpec::rademacher(), 1,
                                              quick_cfg(8, 2, 10));
  CHECK(one.lower_bound == 1.0);

  CHECK_THROWS_AS(
      type2_normalized_sup(NormedSpace::lp(2.0, 2), NoiseSpec::uniform(), 2, quick_cfg(9)),
      input_error);
}

TEST_CASE("cotype blow-up on l_inf matches the quadrature anchor") {
  ConstantEstimate est = cotype2_lower(NormedSpace::linf(2), NoiseSpec::gaussian(), 2,
                                       quick_cfg(11, 6, 60));
  const double anchor = std::sqrt(2.0 / (1.0 + 2.0 / std::acos(-1.0)));
  CHECK(est.lower_bound == doctest::Approx(anchor).epsilon(0.02));
}

TEST_CASE("lower bounds are monotone in restarts and iters (exact path)") {
  const NormedSpace space = NormedSpace::lp(1.0, 3);
  const NoiseSpec noise = NoiseSpec::rademacher();
  double prev = 0.0;
  for (int restarts : {1, 3, 6}) {
    ConstantEstimate est = type2_lower(space, noise, 3, quick_cfg(13, restarts, 30));
    CHECK(est.lower_bound >= prev - 1e-15);
    prev = est.lower_bound;
  }
  prev = 0.0;
  for (int iters : {5, 20, 60}) {
    ConstantEstimate est = type2_lower(space, noise, 3, quick_cfg(13, 3, iters));
    CHECK(est.lower_bound >= prev - 1e-15);
    prev = est.lower_bound;
  }
}

TEST_CASE("witness replay reproduces the bound within monte carlo error") {
  ConstantEstimate est = cotype2_lower(NormedSpace::linf(3), NoiseSpec::gaussian(), 3,
                                       quick_cfg(17, 4, 40));
  SumEstimate replay = second_moment_mc(est.witness, NoiseSpec::gaussian(), 50000, 4242);
  const double value = std::sqrt(est.witness.sum_norm_sq() / replay.mean);
  const double sigma = value * (replay.std_error / (2.0 * replay.mean) +
                                est.numerator.std_error / (2.0 * est.numerator.mean));
  CHECK(std::fabs(value - est.lower_bound) <= 4.0 * sigma + 1e-12);
}

TEST_CASE("transfer ratio: hilbert bound and collinear identity") {
  const NormedSpace H = NormedSpace::lp(2.0, 4);
  VectorTuple tuple = orthonormal_basis_tuple(4);
  LipschitzFn nf = make_norm_functional(H, H, Vec{1.0, 0.0, 0.0, 0.0});
  std::vector<double> scales{1.0, 2.0, 0.5, 1.5};
  TransferRatio tr = transfer_ratio(nf, tuple, scales, NoiseSpec::gaussian(), 40000, 3);
  CHECK(tr.ratio <= 1.0 + tr.margin);

  // collinear positive multiples of one direction: ratio exactly 1
  Vec u{0.6, 0.8, 0.0, 0.0};
  std::vector<Vec> collinear;
  for (double c : {1.0, 2.0, 0.5}) {
    Vec x = u;
    for (double& v : x) v *= c;
    collinear.push_back(std::move(x));
  }
  VectorTuple ctuple(H, std::move(collinear));
  TransferRatio cr = transfer_ratio(nf, ctuple, std::vector<double>(3, 1.0),
                                    NoiseSpec::gaussian(), 5000, 5);
  CHECK(cr.ratio == doctest::Approx(1.0).epsilon(1e-10));

  // all-zero tuple is rejected
  VectorTuple zeros(H, {Vec(4, 0.0), Vec(4, 0.0)});
  CHECK_THROWS_AS(
      transfer_ratio(nf, zeros, std::vector<double>(2, 1.0), NoiseSpec::gaussian(), 100, 0),
      input_error);
}

TEST_CASE("counterexample assembly: hilbert pairs stay bounded") {
  auto cfg = quick_cfg(19, 3, 30);
  CounterexampleResult r =
      transfer_counterexample_search(NormedSpace::lp(2.0, 8), NormedSpace::lp(2.0, 4), 4, 0.05,
                                     cfg);
  CHECK(r.transfer.ratio <= 1.0 + r.transfer.margin + 0.01);
  // f(x_j) = y_j exactly: the numerator IS the target second moment
  CHECK(r.transfer.numerator.mean == r.target_second_moment.mean);
}

TEST_CASE("counterexample assembly: l_inf^64 vs l_1^2 exceeds 0.63") {
  auto cfg = quick_cfg(23, 4, 40);
  CounterexampleResult r = transfer_counterexample_search(NormedSpace::linf(64),
                                                          NormedSpace::lp(1.0, 2), 2, 0.05, cfg);
  CHECK(r.embedding_norm_upper == doctest::Approx(1.0 / std::cos(std::acos(-1.0) / 128.0))
                                      .epsilon(1e-12));  // equiangular closed form
  CHECK(r.transfer.ratio > 0.63);
  CHECK(std::memcmp(&r.transfer.numerator.mean, &r.target_second_moment.mean,
                    sizeof(double)) == 0);
}

TEST_CASE("counterexample ratios grow with the target dimension") {
  auto cfg = quick_cfg(29, 3, 30);
  double prev = 0.0;
  for (int n : {2, 4}) {
    CounterexampleResult r = transfer_counterexample_search(
        NormedSpace::lp(1.0, 512), NormedSpace::lp(1.0, n), n, 0.3, cfg);
    CHECK(r.transfer.ratio > prev);
    prev = r.transfer.ratio;
  }
  CHECK(prev > 1.0);  // by n = 4 the hilbert bound is already violated
}

TEST_CASE("rbound: identity families pin to 1") {
  const NormedSpace H = NormedSpace::lp(2.0, 3);
  ConstantEstimate id = rbound_lower({LinearMap::identity(H)}, 3, quick_cfg(31, 3, 20));
  CHECK(id.lower_bound == 1.0);  // exact enumeration, numerator == denominator

  LinearMap minus(H, H, [] {
    Vec m(9, 0.0);
    for (int i = 0; i < 3; ++i) m[static_cast<std::size_t>(4 * i)] = -1.0;
    return m;
  }());
  ConstantEstimate pm = rbound_lower({LinearMap::identity(H), minus}, 2, quick_cfg(37, 3, 20));
  CHECK(pm.lower_bound == 1.0);  // signs are absorbed by the symmetric noise
}

TEST_CASE("rbound: common-range rank-one family reaches sqrt(2)") {
  // T1 = e1 (x) delta_1, T2 = e1 (x) delta_2 on l_inf^2: both unit norm, and
  // the basis tuple gives E||r1 e1 + r2 e1||^2 = 2 against denominator 1.
  const NormedSpace X = NormedSpace::linf(2);
  LinearMap t1(X, X, {1.0, 0.0, 0.0, 0.0});
  LinearMap t2(X, X, {0.0, 1.0, 0.0, 0.0});
  ConstantEstimate est = rbound_lower({t1, t2}, 2, quick_cfg(41, 4, 40));
  CHECK(est.lower_bound >= std::sqrt(2.0) - 0.01);
  CHECK(est.lower_bound > 1.0);

  CHECK_THROWS_AS(rbound_lower({}, 2, quick_cfg(43)), input_error);
}
