#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "banachlab/errors.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/serialize.hpp"
#include "banachlab/space.hpp"

using namespace banach;
using nlohmann::json;

namespace {

Vec gauss_vec(int dim, std::uint64_t seed, std::uint64_t idx) {
  Vec v(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i)
    v[static_cast<std::size_t>(i)] =
        rng::gaussian_at(seed, rng::streams::noise, idx, static_cast<std::uint32_t>(i));
  return v;
}

std::vector<NormedSpace> sample_spaces() {
  return {NormedSpace::lp(1.0, 5),   NormedSpace::lp(2.0, 5),
          NormedSpace::lp(3.5, 5),   NormedSpace::linf(5),
          NormedSpace::weighted_lp(1.0, {0.5, 2.0, 1.0, 3.0, 0.25}),
          NormedSpace::weighted_lp(2.0, {0.5, 2.0, 1.0, 3.0, 0.25}),
          NormedSpace::weighted_lp(2.5, {0.5, 2.0, 1.0, 3.0, 0.25}),
          NormedSpace::weighted_linf({0.5, 2.0, 1.0, 3.0, 0.25})};
}

}  // namespace

TEST_CASE("norm values on pinned inputs") {
  CHECK(NormedSpace::lp(2.0, 2).norm(Vec{3.0, 4.0}) == 5.0);
  CHECK(NormedSpace::linf(3).norm(Vec{1.0, -2.0, 0.5}) == 2.0);
  CHECK(NormedSpace::lp(1.0, 2).norm(Vec{0.0, 0.0}) == 0.0);
  CHECK(NormedSpace::lp(1.0, 3).norm(Vec{1.0, -2.0, 3.0}) == 6.0);
  CHECK(NormedSpace::weighted_lp(2.0, {4.0, 1.0}).norm(Vec{1.0, 2.0}) ==
        doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
  CHECK(NormedSpace::lp(3.0, 2).norm(Vec{1.0, 1.0}) ==
        doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(NormedSpace::lp(0.5, 3), input_error);
  CHECK_THROWS_AS(NormedSpace::lp(2.0, 0), input_error);
  CHECK_THROWS_AS(NormedSpace::weighted_lp(2.0, {1.0, -1.0}), input_error);
  CHECK_THROWS_AS(NormedSpace::lp(2.0, 3).norm(Vec{1.0, 2.0}), input_error);
  CHECK_THROWS_AS(VectorTuple(NormedSpace::lp(2.0, 2), {}), input_error);
  CHECK_THROWS_AS(VectorTuple(NormedSpace::lp(2.0, 2), {Vec{1.0}}), input_error);
}

TEST_CASE("triangle inequality and homogeneity on sampled vectors") {
  for (const auto& space : sample_spaces()) {
    for (std::uint64_t t = 0; t < 200; ++t) {
      Vec u = gauss_vec(space.dim(), 1, 2 * t);
      Vec v = gauss_vec(space.dim(), 1, 2 * t + 1);
      Vec sum(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) sum[i] = u[i] + v[i];
      const double lhs = space.norm(sum);
      const double rhs = space.norm(u) + space.norm(v);
      CHECK(lhs <= rhs * (1.0 + 1e-12));

      const double alpha = -2.75;
      Vec au = u;
      for (double& c : au) c *= alpha;
      CHECK(space.norm(au) ==
            doctest::Approx(std::fabs(alpha) * space.norm(u)).epsilon(1e-12));
    }
    Vec zero(static_cast<std::size_t>(space.dim()), 0.0);
    CHECK(space.norm(zero) == 0.0);
  }
}

TEST_CASE("operator norm exact paths") {
  auto id3 = LinearMap::identity(NormedSpace::lp(2.0, 3));
  auto r = operator_norm(id3);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.certified);

  // rows of unit euclidean length into l_inf
  LinearMap rows(NormedSpace::lp(2.0, 2), NormedSpace::linf(2), {1.0, 0.0, 0.0, 1.0});
  auto rinf = operator_norm(rows);
  CHECK(rinf.value == 1.0);
  CHECK(rinf.certified);

  // l_1 domain: max column norm
  LinearMap col(NormedSpace::lp(1.0, 2), NormedSpace::lp(2.0, 2), {1.0, 0.0, 2.0, 1.0});
  auto rc = operator_norm(col);
  CHECK(rc.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(rc.certified);
}

TEST_CASE("l2 to l1 identity has norm sqrt(2)") {
  LinearMap T(NormedSpace::lp(2.0, 2), NormedSpace::lp(1.0, 2), {1.0, 0.0, 0.0, 1.0});
  auto r = operator_norm(T);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("projected ascent estimate stays sane in higher dimensions") {
  // diag identity l_2^4 -> l_1^4: the supremum is 2 at the uniform vector
  Vec m(16, 0.0);
  for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(5 * i)] = 1.0;
  LinearMap T(NormedSpace::lp(2.0, 4), NormedSpace::lp(1.0, 4), m);
  auto r = operator_norm(T, {.restarts = 16, .iters = 200, .seed = 3});
  CHECK_FALSE(r.certified);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.value <= 2.0 + 1e-9);
  // lower-bound sanity against every basis column
  for (int j = 0; j < 4; ++j)
    CHECK(r.value >= T.codomain.norm(T.column(j)) - 1e-9);
}

TEST_CASE("min gain exact and degenerate cases") {
  auto id3 = LinearMap::identity(NormedSpace::lp(2.0, 3));
  auto g = min_gain(id3);
  CHECK(g.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.certified);

  LinearMap zero(NormedSpace::lp(2.0, 2), NormedSpace::lp(2.0, 2), {0.0, 0.0, 0.0, 0.0});
  CHECK(min_gain(zero).value == 0.0);

  LinearMap wide(NormedSpace::lp(2.0, 3), NormedSpace::lp(2.0, 2),
                 {1.0, 0.0, 0.0, 0.0, 1.0, 0.0});
  CHECK(min_gain(wide).value == 0.0);
}

TEST_CASE("orthogonal matrices have norm * gain = 1") {
  const double c = std::cos(0.7), s = std::sin(0.7);
  LinearMap rot(NormedSpace::lp(2.0, 2), NormedSpace::lp(2.0, 2), {c, -s, s, c});
  auto up = operator_norm(rot);
  auto lo = min_gain(rot);
  CHECK(up.value * lo.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lo.value <= up.value);
}

TEST_CASE("space json round trip") {
  for (const auto& space : sample_spaces()) {
    json j = space;
    NormedSpace back = parse_space(j);
    CHECK(back == space);
  }
  json j = NormedSpace::linf(4);
  CHECK(j.at("p") == "inf");
  CHECK(j.at("dim") == 4);
  CHECK(j.at("kind") == "lp");
  CHECK_THROWS_AS(parse_space(json{{"kind", "lp"}, {"p", 0.5}, {"dim", 2}}), input_error);
}

TEST_CASE("linear map json round trip") {
  LinearMap T(NormedSpace::lp(2.0, 2), NormedSpace::linf(3),
              {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  json j = T;
  LinearMap back = parse_linear_map(j);
  CHECK(back.matrix == T.matrix);
  CHECK(back.domain == T.domain);
  CHECK(back.codomain == T.codomain);
  CHECK(j.at("matrix").size() == 3);  // row-major nested rows
  CHECK(j.at("matrix")[0].size() == 2);
}
