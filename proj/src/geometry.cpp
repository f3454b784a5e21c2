#include "banachlab/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "banachlab/errors.hpp"
#include "banachlab/kernels.hpp"
#include "banachlab/parallel.hpp"
#include "banachlab/rng.hpp"

namespace banach {

namespace {

// Unit vector on the l_2 sphere from n Gaussians.
void sphere_point(Vec& z, std::uint64_t seed, std::uint32_t stream, std::uint64_t index) {
  const std::size_t n = z.size();
  for (std::size_t j = 0; j < n; j += 2) {
    auto u = rng::uniforms2(seed, stream, index, static_cast<std::uint32_t>(j >> 1));
    z[j] = rng::inverse_normal_cdf(u[0]);
    if (j + 1 < n) z[j + 1] = rng::inverse_normal_cdf(u[1]);
  }
  double nz = std::sqrt(kernels::sum_sq(z.data(), n));
  if (nz < 1e-300) {
    std::fill(z.begin(), z.end(), 0.0);
    z[0] = 1.0;
    return;
  }
  for (double& c : z) c /= nz;
}

struct MinMax {
  double mn = std::numeric_limits<double>::infinity();
  double mx = 0.0;
  MinMax& operator+=(const MinMax& o) {
    mn = std::min(mn, o.mn);
    mx = std::max(mx, o.mx);
    return *this;
  }
};

MinMax sampled_range(const LinearMap& T, std::uint64_t points, std::uint64_t seed) {
  return par::chunked_reduce<MinMax>(points, [&](std::uint64_t begin, std::uint64_t end) {
    MinMax part;
    Vec z(static_cast<std::size_t>(T.cols())), y;
    for (std::uint64_t i = begin; i < end; ++i) {
      sphere_point(z, seed, rng::streams::embed_cert, i);
      T.apply_into(z, y);
      const double v = T.codomain.norm(y);
      part.mn = std::min(part.mn, v);
      part.mx = std::max(part.mx, v);
    }
    return part;
  });
}

// Gram-Schmidt in the (possibly weighted) l_2 inner product of the target.
LinearMap orthonormal_columns(int n, const NormedSpace& target, std::uint64_t seed) {
  const int m = target.dim();
  if (m < n)
    throw construction_error("hilbert target dimension " + std::to_string(m) +
                             " is smaller than n = " + std::to_string(n));
  const bool weighted = target.kind() == NormedSpace::Kind::weighted_lp;
  auto inner = [&](const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      double w = weighted ? target.weights()[static_cast<std::size_t>(i)] : 1.0;
      s += w * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    }
    return s;
  };

  std::vector<Vec> cols;
  cols.reserve(static_cast<std::size_t>(n));
  std::uint64_t idx = 0;
  int guard = 0;
  while (static_cast<int>(cols.size()) < n) {
    if (++guard > 100 * n) throw construction_error("orthonormalization failed");
    Vec g(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      g[static_cast<std::size_t>(i)] = rng::gaussian_at(seed, rng::streams::embed_matrix, idx++);
    for (const Vec& c : cols) {
      const double proj = inner(g, c);
      for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] -= proj * c[static_cast<std::size_t>(i)];
    }
    const double nz = std::sqrt(inner(g, g));
    if (nz < 1e-8) continue;
    for (double& c : g) c /= nz;
    cols.push_back(std::move(g));
  }

  Vec mat(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c)
      mat[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
          static_cast<std::size_t>(c)] = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
  return LinearMap(NormedSpace::lp(2.0, n), target, std::move(mat));
}

}  // namespace

Embedding equiangular_embedding(int N) {
  if (N < 2) throw input_error("equiangular embedding needs N >= 2");
  const double pi = std::acos(-1.0);
  const double scale = 1.0 / std::cos(pi / (2.0 * N));
  Vec mat(static_cast<std::size_t>(N) * 2);
  for (int k = 0; k < N; ++k) {
    const double t = k * pi / N;
    mat[static_cast<std::size_t>(2 * k)] = scale * std::cos(t);
    mat[static_cast<std::size_t>(2 * k + 1)] = scale * std::sin(t);
  }
  Embedding e{LinearMap(NormedSpace::lp(2.0, 2), NormedSpace::linf(N), std::move(mat)),
              /*gain_lower=*/1.0,
              /*norm_upper=*/scale,
              Embedding::Certification::closed_form,
              /*cert_points=*/0,
              /*seed=*/0};
  return e;
}

Embedding random_embedding(int n, const NormedSpace& target, double eps,
                           std::uint64_t cert_points, std::uint64_t seed) {
  if (n < 1) throw input_error("random_embedding: n must be >= 1");
  if (!(eps > 0.0)) throw input_error("random_embedding: eps must be > 0");
  if (cert_points < 2) throw input_error("random_embedding: cert_points must be >= 2");

  if (target.hilbert()) {
    Embedding e{orthonormal_columns(n, target, seed), 1.0, 1.0,
                Embedding::Certification::closed_form, 0, seed};
    return e;
  }

  const int m = target.dim();
  const NormedSpace domain = NormedSpace::lp(2.0, n);
  for (int retry = 0; retry < kEmbeddingMaxRetries; ++retry) {
    const std::uint64_t rseed = rng::derive_seed(seed, static_cast<std::uint64_t>(retry));
    Vec mat(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < mat.size(); ++i)
      mat[i] = rng::gaussian_at(rseed, rng::streams::embed_matrix, i);
    LinearMap T(domain, target, std::move(mat));
    MinMax range = sampled_range(T, cert_points, rseed);
    if (!(range.mn > 0.0)) continue;
    if (range.mx / range.mn > 1.0 + eps) continue;
    for (double& c : T.matrix) c /= range.mn;
    Embedding e{std::move(T), 1.0, range.mx / range.mn, Embedding::Certification::sampled,
                cert_points, seed};
    return e;
  }
  throw construction_error(
      "random_embedding: no matrix met the distortion bound after " +
      std::to_string(kEmbeddingMaxRetries) +
      " retries; use a larger target dimension or a larger eps");
}

VectorTuple embedded_basis(const Embedding& E, std::span<const double> lengths) {
  const int n = E.n();
  if (!lengths.empty() && static_cast<int>(lengths.size()) != n)
    throw input_error("embedded_basis: lengths size mismatch");
  std::vector<Vec> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Vec col = E.map.column(j);
    const double lj = lengths.empty() ? 1.0 : lengths[static_cast<std::size_t>(j)];
    for (double& c : col) c *= lj;
    xs.push_back(std::move(col));
  }
  return VectorTuple(E.map.codomain, std::move(xs));
}

SeparationReport separation_check(const Embedding& E, std::uint64_t trials, std::uint64_t seed) {
  SeparationReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  const int n = E.n();
  if (n < 2) {
    rep.trials = 0;
    return rep;  // no pairs to test
  }
  VectorTuple xs = embedded_basis(E);
  Vec diff(static_cast<std::size_t>(E.map.rows()));

  for (std::uint64_t t = 0; t < trials; ++t) {
    auto u = rng::uniforms2(seed, rng::streams::separation, t, 0);
    auto uv = rng::uniforms2(seed, rng::streams::separation, t, 1);
    int j = static_cast<int>(u[0] * n);
    int k = static_cast<int>(u[1] * (n - 1));
    if (j >= n) j = n - 1;
    if (k >= j) ++k;  // k != j
    const double a = 20.0 * uv[0] - 10.0;
    const double b = 20.0 * uv[1] - 10.0;
    const double denom = std::sqrt(a * a + b * b);
    if (denom < 1e-9) continue;
    const Vec& xj = xs.vectors[static_cast<std::size_t>(j)];
    const Vec& xk = xs.vectors[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a * xj[i] - b * xk[i];
    const double ratio = E.map.codomain.norm(diff) / denom;
    ++rep.trials;
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.worst_j = j;
      rep.worst_k = k;
      rep.worst_a = a;
      rep.worst_b = b;
    }
    if (ratio < E.gain_lower - kSeparationTol) ++rep.violations;
  }
  rep.passed = rep.violations == 0;
  return rep;
}

}  // namespace banach
