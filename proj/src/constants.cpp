#include "banachlab/constants.hpp"

#include <algorithm>
#include <cmath>

#include "banachlab/errors.hpp"
#include "banachlab/geometry.hpp"
#include "banachlab/kernels.hpp"
#include "banachlab/rng.hpp"

namespace banach {

namespace {

constexpr int kSearchExactCap = 12;  // exact sign enumeration inside the search loop

std::vector<Vec> basis_start(int n, int dim) {
  std::vector<Vec> xs(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(dim), 0.0));
  for (int j = 0; j < n; ++j) xs[static_cast<std::size_t>(j)][static_cast<std::size_t>(j % dim)] = 1.0;
  return xs;
}

std::vector<Vec> random_start(int n, int dim, std::uint64_t seed) {
  std::vector<Vec> xs(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(dim)));
  std::uint64_t idx = 0;
  for (auto& x : xs)
    for (double& c : x) c = rng::gaussian_at(seed, rng::streams::search, idx++, 0xFFFF);
  return xs;
}

// Scale the whole tuple to sum ||x_j||^2 = 1 (the ratio objectives are
// scale-invariant; this keeps Monte Carlo noise comparable across steps).
void project_unit_mass(std::vector<Vec>& xs, const NormedSpace& space) {
  double s = 0.0;
  for (const Vec& x : xs) {
    double nx = space.norm(x);
    s += nx * nx;
  }
  if (!(s > 0.0)) {
    xs = basis_start(static_cast<int>(xs.size()), space.dim());
    return;
  }
  const double c = 1.0 / std::sqrt(s);
  for (Vec& x : xs)
    for (double& v : x) v *= c;
}

// Scale each vector to norm n^(-1/2) (the normalized-supremum constraint).
void project_equal_norms(std::vector<Vec>& xs, const NormedSpace& space) {
  const double target = 1.0 / std::sqrt(static_cast<double>(xs.size()));
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double nx = space.norm(xs[j]);
    if (!(nx > 0.0)) {
      std::fill(xs[j].begin(), xs[j].end(), 0.0);
      xs[j][j % xs[j].size()] = 1.0;
      nx = space.norm(xs[j]);
    }
    const double c = target / nx;
    for (double& v : xs[j]) v *= c;
  }
}

SumEstimate exact_estimate(const VectorTuple& t) {
  return SumEstimate{second_moment_exact_rademacher(t), 0.0,
                     1ull << static_cast<unsigned>(t.n()), 0};
}

bool use_exact(const NoiseSpec& noise, int n, int cap) {
  return noise.family() == NoiseSpec::Family::rademacher && n <= cap;
}

SumEstimate second_moment(const VectorTuple& t, const NoiseSpec& noise, std::uint64_t samples,
                          std::uint64_t seed, std::uint32_t stream, int exact_cap) {
  if (use_exact(noise, t.n(), exact_cap)) return exact_estimate(t);
  return second_moment_mc(t, noise, samples, seed, stream);
}

enum class RatioKind { type2, cotype2 };

double ratio_value(RatioKind kind, double num_mean, double den) {
  if (!(num_mean > 0.0) || !(den > 0.0)) return 0.0;
  return kind == RatioKind::type2 ? std::sqrt(num_mean / den) : std::sqrt(den / num_mean);
}

struct RestartOutcome {
  double value = -1.0;
  std::vector<Vec> witness;
  SumEstimate num, den;
};

// Blockwise hill climbing from one start with common random numbers: the
// Monte Carlo objective reuses one seed for every step of a restart, and a
// fresh seed scores the final witness.
template <class Project>
RestartOutcome run_restart(const NormedSpace& space, const NoiseSpec& noise, int n, int restart,
                           const WitnessSearchConfig& cfg, RatioKind kind, Project project) {
  const int dim = space.dim();
  std::vector<Vec> xs =
      restart == 0 ? basis_start(n, dim)
                   : random_start(n, dim, rng::derive_seed(cfg.seed, 2 * restart + 1));
  project(xs);

  const std::uint64_t eval_seed = rng::derive_seed(cfg.seed, 0x5EED0000 + restart);
  const std::uint64_t prop_seed = rng::derive_seed(cfg.seed, 0xA11CE000 + restart);

  auto objective = [&](const std::vector<Vec>& cand) {
    VectorTuple t(space, cand);
    SumEstimate num = second_moment(t, noise, cfg.samples_per_eval, eval_seed,
                                    rng::streams::search, kSearchExactCap);
    return ratio_value(kind, num.mean, t.sum_norm_sq());
  };

  double cur = objective(xs);
  for (int it = 0; it < cfg.iters; ++it) {
    const double shrink = it < cfg.iters / 3 ? 1.0 : (it < 2 * cfg.iters / 3 ? 0.3 : 0.1);
    const double step = cfg.step * shrink;
    auto u = rng::uniforms2(prop_seed, rng::streams::search, static_cast<std::uint64_t>(it), 0);
    int j = std::min(n - 1, static_cast<int>(u[0] * n));
    std::vector<Vec> cand = xs;
    for (int i = 0; i < dim; ++i)
      cand[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] +=
          step * rng::gaussian_at(prop_seed, rng::streams::search,
                                  static_cast<std::uint64_t>(it), 1 + static_cast<std::uint32_t>(i));
    project(cand);
    const double v = objective(cand);
    if (v > cur) {
      xs = std::move(cand);
      cur = v;
    }
  }

  RestartOutcome out;
  out.witness = xs;
  VectorTuple t(space, xs);
  out.num = second_moment(t, noise, cfg.final_samples,
                          rng::derive_seed(cfg.seed, 0xF1A40000 + restart), rng::streams::eval,
                          kMaxExactSigns);
  out.den = SumEstimate{t.sum_norm_sq(), 0.0, 0, 0};
  out.value = ratio_value(kind, out.num.mean, out.den.mean);
  return out;
}

template <class Project>
ConstantEstimate search_constant(const NormedSpace& space, const NoiseSpec& noise, int n,
                                 const WitnessSearchConfig& cfg, RatioKind kind, Project project) {
  if (n < 1) throw input_error("n must be >= 1");
  RestartOutcome best;
  const int restarts = std::max(1, cfg.restarts);
  for (int r = 0; r < restarts; ++r) {
    RestartOutcome out = run_restart(space, noise, n, r, cfg, kind, project);
    if (out.value > best.value) best = std::move(out);  // first restart wins ties
  }
  return ConstantEstimate{best.value, VectorTuple(space, std::move(best.witness)),
                          {},        noise,
                          best.num,  best.den};
}

}  // namespace

ConstantEstimate type2_lower(const NormedSpace& space, const NoiseSpec& noise, int n,
                             const WitnessSearchConfig& cfg) {
  return search_constant(space, noise, n, cfg, RatioKind::type2,
                         [&](std::vector<Vec>& xs) { project_unit_mass(xs, space); });
}

ConstantEstimate cotype2_lower(const NormedSpace& space, const NoiseSpec& noise, int n,
                               const WitnessSearchConfig& cfg) {
  return search_constant(space, noise, n, cfg, RatioKind::cotype2,
                         [&](std::vector<Vec>& xs) { project_unit_mass(xs, space); });
}

ConstantEstimate type2_normalized_sup(const NormedSpace& space, const NoiseSpec& noise, int n,
                                      const WitnessSearchConfig& cfg) {
  if (noise.family() != NoiseSpec::Family::gaussian &&
      noise.family() != NoiseSpec::Family::rademacher)
    throw input_error("type2_normalized_sup supports gaussian or rademacher noise only");
  return search_constant(space, noise, n, cfg, RatioKind::type2,
                         [&](std::vector<Vec>& xs) { project_equal_norms(xs, space); });
}

TransferRatio transfer_ratio(const LipschitzFn& f, const VectorTuple& tuple,
                             std::span<const double> scales, const NoiseSpec& noise,
                             std::uint64_t samples, std::uint64_t seed) {
  const int n = tuple.n();
  if (!(f.domain() == tuple.space)) throw input_error("transfer_ratio: tuple not in dom f");
  if (!scales.empty() && static_cast<int>(scales.size()) != n)
    throw input_error("transfer_ratio: scales size mismatch");
  for (double a : scales)
    if (!(a > 0.0)) throw input_error("transfer_ratio: scales must be positive");
  if (!(tuple.sum_norm_sq() > 0.0)) throw input_error("transfer_ratio: all x_j are zero");

  // g_j = a_j^{-1} f(a_j x_j): the numerator is then a plain random sum in Y.
  std::vector<Vec> gs;
  gs.reserve(static_cast<std::size_t>(n));
  Vec scaled(static_cast<std::size_t>(tuple.dim()));
  for (int j = 0; j < n; ++j) {
    const double aj = scales.empty() ? 1.0 : scales[static_cast<std::size_t>(j)];
    const Vec& xj = tuple.vectors[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = aj * xj[i];
    Vec g = f.eval(scaled);
    const double inv = 1.0 / aj;
    for (double& c : g) c *= inv;
    gs.push_back(std::move(g));
  }
  VectorTuple image(f.codomain(), std::move(gs));

  SumEstimate num = second_moment(image, noise, samples, seed, rng::streams::eval, kMaxExactSigns);
  SumEstimate den = second_moment(tuple, noise, samples, seed, rng::streams::eval, kMaxExactSigns);
  if (!(den.mean > 0.0)) throw input_error("transfer_ratio: denominator vanished");

  TransferRatio out;
  out.lip_upper = f.lip_upper();
  out.ratio = std::sqrt(num.mean) / (out.lip_upper * std::sqrt(den.mean));
  out.numerator = num;
  out.denominator = den;
  // d(sqrt m)/sqrt m = dm/(2m); 4 sigma on each side combined
  double rel = 0.0;
  if (num.mean > 0.0) rel += 2.0 * num.std_error / num.mean;
  rel += 2.0 * den.std_error / den.mean;
  out.margin = out.ratio * rel;
  return out;
}

CounterexampleResult transfer_counterexample_search(const NormedSpace& X, const NormedSpace& Y,
                                                    int n, double eps,
                                                    const WitnessSearchConfig& cfg) {
  if (n < 1) throw input_error("n must be >= 1");
  if (!(eps > 0.0)) throw input_error("eps must be > 0");

  // Targets: a normalized type-2 witness of Y, rescaled to unit vectors.
  ConstantEstimate wit = type2_normalized_sup(Y, NoiseSpec::gaussian(), n, cfg);
  std::vector<Vec> ys = wit.witness.vectors;
  for (Vec& y : ys) {
    const double ny = Y.norm(y);
    for (double& c : y) c /= ny;
  }
  VectorTuple targets(Y, std::move(ys));

  // Centers: an almost isometric copy of l_2^n inside X.
  Embedding emb = [&] {
    if (X.hilbert()) return random_embedding(n, X, eps, kDefaultCertPoints,
                                             rng::derive_seed(cfg.seed, 0xE3BEDll));
    if (n == 2 && X.kind() == NormedSpace::Kind::lp && X.is_inf())
      return equiangular_embedding(X.dim());
    return random_embedding(n, X, eps, kDefaultCertPoints, rng::derive_seed(cfg.seed, 0xE3BEDll));
  }();
  VectorTuple centers = embedded_basis(emb);

  std::vector<double> scales(static_cast<std::size_t>(n), 1.0);
  LipschitzFn f = make_sector_bump(centers, targets, scales);

  const std::uint64_t tseed = rng::derive_seed(cfg.seed, 0x7247E0ll);
  TransferRatio tr = transfer_ratio(f, centers, scales, NoiseSpec::gaussian(),
                                    cfg.final_samples, tseed);
  SumEstimate tmom = second_moment_mc(targets, NoiseSpec::gaussian(), cfg.final_samples, tseed,
                                      rng::streams::eval);

  return CounterexampleResult{tr,
                              std::move(centers),
                              std::move(targets),
                              std::move(scales),
                              emb.norm_upper,
                              emb.gain_lower,
                              tmom};
}

ConstantEstimate rbound_lower(const std::vector<LinearMap>& family, int n,
                              const WitnessSearchConfig& cfg) {
  if (family.empty()) throw input_error("rbound_lower: family must be nonempty");
  const NormedSpace& X = family.front().domain;
  const NormedSpace& Y = family.front().codomain;
  for (const LinearMap& T : family)
    if (!(T.domain == X) || !(T.codomain == Y))
      throw input_error("rbound_lower: family must share domain and codomain");
  if (n < 1) n = static_cast<int>(family.size());

  const NoiseSpec noise = NoiseSpec::rademacher();
  auto mapped = [&](const std::vector<Vec>& xs) {
    std::vector<Vec> zs;
    zs.reserve(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j)
      zs.push_back(family[j % family.size()].apply(xs[j]));
    return zs;
  };

  auto eval_pair = [&](const std::vector<Vec>& xs, std::uint64_t samples, std::uint64_t seed,
                       int cap) {
    VectorTuple tx(X, xs);
    VectorTuple tz(Y, mapped(xs));
    SumEstimate num = second_moment(tz, noise, samples, seed, rng::streams::search, cap);
    SumEstimate den = second_moment(tx, noise, samples, seed, rng::streams::search, cap);
    return std::pair<SumEstimate, SumEstimate>(num, den);
  };

  RestartOutcome best;
  const int dim = X.dim();
  const int restarts = std::max(1, cfg.restarts);
  for (int r = 0; r < restarts; ++r) {
    std::vector<Vec> xs = r == 0 ? basis_start(n, dim)
                                 : random_start(n, dim, rng::derive_seed(cfg.seed, 2 * r + 1));
    project_unit_mass(xs, X);
    const std::uint64_t eval_seed = rng::derive_seed(cfg.seed, 0x5EED0000 + r);
    const std::uint64_t prop_seed = rng::derive_seed(cfg.seed, 0xA11CE000 + r);

    auto objective = [&](const std::vector<Vec>& cand) {
      auto [num, den] = eval_pair(cand, cfg.samples_per_eval, eval_seed, kSearchExactCap);
      if (!(num.mean > 0.0) || !(den.mean > 0.0)) return 0.0;
      return std::sqrt(num.mean / den.mean);
    };

    double cur = objective(xs);
    for (int it = 0; it < cfg.iters; ++it) {
      const double shrink = it < cfg.iters / 3 ? 1.0 : (it < 2 * cfg.iters / 3 ? 0.3 : 0.1);
      auto u = rng::uniforms2(prop_seed, rng::streams::search, static_cast<std::uint64_t>(it), 0);
      int j = std::min(n - 1, static_cast<int>(u[0] * n));
      std::vector<Vec> cand = xs;
      for (int i = 0; i < dim; ++i)
        cand[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] +=
            cfg.step * shrink *
            rng::gaussian_at(prop_seed, rng::streams::search, static_cast<std::uint64_t>(it),
                             1 + static_cast<std::uint32_t>(i));
      project_unit_mass(cand, X);
      const double v = objective(cand);
      if (v > cur) {
        xs = std::move(cand);
        cur = v;
      }
    }

    auto [num, den] = eval_pair(xs, cfg.final_samples,
                                rng::derive_seed(cfg.seed, 0xF1A40000 + r), kMaxExactSigns);
    RestartOutcome out;
    out.witness = std::move(xs);
    out.num = num;
    out.den = den;
    out.value = (num.mean > 0.0 && den.mean > 0.0) ? std::sqrt(num.mean / den.mean) : 0.0;
    if (out.value > best.value) best = std::move(out);
  }

  return ConstantEstimate{best.value, VectorTuple(X, std::move(best.witness)),
                          {},        noise,
                          best.num,  best.den};
}

}  // namespace banach
