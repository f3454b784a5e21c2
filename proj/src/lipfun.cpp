#include "banachlab/lipfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "banachlab/errors.hpp"
#include "banachlab/kernels.hpp"
#include "banachlab/rng.hpp"

namespace banach {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void require_unit(const NormedSpace& s, const Vec& v, const char* what) {
  if (std::fabs(s.norm(v) - 1.0) > 1e-9) throw input_error(std::string(what) + " must have unit norm");
}

}  // namespace

LipschitzFn::LipschitzFn(NormedSpace domain, NormedSpace codomain, Variant v)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), variant_(std::move(v)) {
  std::visit(
      [&](const auto& fn) {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, NormFunctional>) {
          if (static_cast<int>(fn.y0.size()) != codomain_.dim())
            throw input_error("y0 dimension mismatch");
          require_unit(codomain_, fn.y0, "y0");
        } else if constexpr (std::is_same_v<T, SectorBump>) {
          if (!(fn.centers.space == domain_)) throw input_error("centers must live in the domain");
          if (!(fn.targets.space == codomain_))
            throw input_error("targets must live in the codomain");
          if (fn.targets.n() != fn.centers.n() ||
              static_cast<int>(fn.scales.size()) != fn.centers.n())
            throw input_error("centers/targets/scales must have equal length");
          for (const Vec& y : fn.targets.vectors) require_unit(codomain_, y, "targets");
          for (double a : fn.scales)
            if (!(a > 0.0)) throw input_error("scales must be positive");
        } else if constexpr (std::is_same_v<T, RayBump>) {
          if (!(fn.centers.space == domain_)) throw input_error("centers must live in the domain");
          if (!(fn.targets.space == codomain_))
            throw input_error("targets must live in the codomain");
          if (fn.targets.n() != fn.centers.n())
            throw input_error("centers/targets must have equal length");
          if (!(fn.eps > 0.0)) throw input_error("eps must be > 0");
          const int n = fn.centers.n();
          std::vector<double> cn(static_cast<std::size_t>(n));
          for (int j = 0; j < n; ++j) {
            cn[static_cast<std::size_t>(j)] = fn.centers.norm(j);
            if (!(cn[static_cast<std::size_t>(j)] > 0.0))
              throw input_error("ray bump centers must be nonzero");
            if (fn.targets.norm(j) > cn[static_cast<std::size_t>(j)] * (1.0 + 1e-9))
              throw input_error("ray bump needs ||y_j|| <= ||x_j||");
          }
          // normalized-center separation required by the sector disjointness
          const double need = kSqrt2 / (1.0 + fn.eps) * (1.0 - 1e-9);
          Vec diff(static_cast<std::size_t>(domain_.dim()));
          for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
              for (std::size_t i = 0; i < diff.size(); ++i)
                diff[i] = fn.centers.vectors[static_cast<std::size_t>(j)][i] /
                              cn[static_cast<std::size_t>(j)] -
                          fn.centers.vectors[static_cast<std::size_t>(k)][i] /
                              cn[static_cast<std::size_t>(k)];
              if (domain_.norm(diff) < need)
                throw input_error("ray bump centers are not separated enough");
            }
        } else if constexpr (std::is_same_v<T, McShaneScalar>) {
          if (!(fn.points.space == domain_)) throw input_error("points must live in the domain");
          if (fn.values.size() != fn.points.vectors.size())
            throw input_error("points/values must have equal length");
          if (!(fn.lip > 0.0)) throw input_error("L must be positive");
          if (static_cast<int>(fn.direction.size()) != codomain_.dim())
            throw input_error("direction dimension mismatch");
          require_unit(codomain_, fn.direction, "direction");
          // f(0) = 0 must hold for membership in Lip_0
          double g0 = std::numeric_limits<double>::infinity();
          for (std::size_t j = 0; j < fn.values.size(); ++j)
            g0 = std::min(g0, fn.values[j] + fn.lip * fn.points.norm(static_cast<int>(j)));
          double scale = 1.0;
          for (double v : fn.values) scale = std::max(scale, std::fabs(v));
          if (std::fabs(g0) > 1e-12 * scale)
            throw input_error("mcshane data must satisfy f(0) = 0 (include the origin)");
        }
      },
      variant_);
}

std::string_view LipschitzFn::variant_name() const {
  switch (variant_.index()) {
    case 0:
      return "norm_functional";
    case 1:
      return "sector_bump";
    case 2:
      return "ray_bump";
    default:
      return "mcshane_scalar";
  }
}

Vec LipschitzFn::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != domain_.dim()) throw input_error("eval: dimension mismatch");
  Vec out(static_cast<std::size_t>(codomain_.dim()), 0.0);

  if (const auto* nf = std::get_if<NormFunctional>(&variant_)) {
    const double nx = domain_.norm(x);
    if (nx != 0.0) kernels::axpy(out.data(), nx, nf->y0.data(), out.size());
    return out;
  }

  if (const auto* sb = std::get_if<SectorBump>(&variant_)) {
    Vec tmp(x.size());
    for (int j = 0; j < sb->centers.n(); ++j) {
      const double aj = sb->scales[static_cast<std::size_t>(j)];
      const Vec& cj = sb->centers.vectors[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = x[i] / aj - cj[i];
      const double psi = aj * std::max(0.0, 1.0 - kSqrt2 * domain_.norm(tmp));
      if (psi > 0.0)
        kernels::axpy(out.data(), psi, sb->targets.vectors[static_cast<std::size_t>(j)].data(),
                      out.size());
    }
    return out;
  }

  if (const auto* rb = std::get_if<RayBump>(&variant_)) {
    const double nx = domain_.norm(x);
    if (nx == 0.0) return out;  // phi_j(0) = 0 by definition
    Vec tmp(x.size());
    const double slope = kSqrt2 * (1.0 + rb->eps);
    for (int j = 0; j < rb->centers.n(); ++j) {
      const Vec& cj = rb->centers.vectors[static_cast<std::size_t>(j)];
      const double cn = rb->centers.norm(j);
      for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = x[i] / nx - cj[i] / cn;
      const double dj = domain_.norm(tmp);
      const double phi = std::max(0.0, 1.0 - slope * dj) * nx;
      if (phi > 0.0)
        kernels::axpy(out.data(), phi / cn,
                      rb->targets.vectors[static_cast<std::size_t>(j)].data(), out.size());
    }
    return out;
  }

  const auto& ms = std::get<McShaneScalar>(variant_);
  Vec tmp(x.size());
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ms.values.size(); ++j) {
    const Vec& pj = ms.points.vectors[j];
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = x[i] - pj[i];
    g = std::min(g, ms.values[j] + ms.lip * domain_.norm(tmp));
  }
  if (g != 0.0) kernels::axpy(out.data(), g, ms.direction.data(), out.size());
  return out;
}

double LipschitzFn::lip_upper() const {
  switch (variant_.index()) {
    case 0:
      return 1.0;
    case 1:
      return kSqrt2;
    case 2:
      return ray_bump_lip_bound(std::get<RayBump>(variant_).eps);
    default:
      return std::get<McShaneScalar>(variant_).lip;
  }
}

LipschitzFn make_norm_functional(NormedSpace domain, NormedSpace codomain, Vec y0) {
  return LipschitzFn(std::move(domain), std::move(codomain), NormFunctional{std::move(y0)});
}

LipschitzFn make_sector_bump(VectorTuple centers, VectorTuple targets,
                             std::vector<double> scales) {
  NormedSpace dom = centers.space;
  NormedSpace cod = targets.space;
  return LipschitzFn(std::move(dom), std::move(cod),
                     SectorBump{std::move(centers), std::move(targets), std::move(scales)});
}

LipschitzFn make_ray_bump(VectorTuple centers, VectorTuple targets, double eps) {
  NormedSpace dom = centers.space;
  NormedSpace cod = targets.space;
  return LipschitzFn(std::move(dom), std::move(cod),
                     RayBump{std::move(centers), std::move(targets), eps});
}

LipschitzFn make_mcshane(VectorTuple points, std::vector<double> values, double lip,
                         NormedSpace codomain, Vec direction) {
  NormedSpace dom = points.space;
  return LipschitzFn(
      std::move(dom), std::move(codomain),
      McShaneScalar{std::move(points), std::move(values), lip, std::move(direction)});
}

double sector_bump_psi(const LipschitzFn& f, int j, std::span<const double> x) {
  const auto* sb = std::get_if<SectorBump>(&f.variant());
  if (!sb) throw input_error("sector_bump_psi: not a sector bump");
  if (j < 0 || j >= sb->centers.n()) throw input_error("sector_bump_psi: index out of range");
  const double aj = sb->scales[static_cast<std::size_t>(j)];
  const Vec& cj = sb->centers.vectors[static_cast<std::size_t>(j)];
  Vec tmp(x.size());
  for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = x[i] / aj - cj[i];
  return aj * std::max(0.0, 1.0 - kSqrt2 * f.domain().norm(tmp));
}

std::vector<int> sector_indicator(const LipschitzFn& f, std::span<const double> x) {
  const auto* sb = std::get_if<SectorBump>(&f.variant());
  if (!sb) throw input_error("sector_indicator: not a sector bump");
  std::vector<int> active;
  for (int j = 0; j < sb->centers.n(); ++j)
    if (sector_bump_psi(f, j, x) > 0.0) active.push_back(j);
  return active;
}

namespace {

double sampling_radius(const LipschitzFn& f) {
  double r = 2.0;
  if (const auto* sb = std::get_if<SectorBump>(&f.variant())) {
    for (int j = 0; j < sb->centers.n(); ++j)
      r = std::max(r, 2.0 * sb->scales[static_cast<std::size_t>(j)] * (1.0 + sb->centers.norm(j)));
  } else if (const auto* rb = std::get_if<RayBump>(&f.variant())) {
    for (int j = 0; j < rb->centers.n(); ++j) r = std::max(r, 2.0 * rb->centers.norm(j) + 1.0);
  } else if (const auto* ms = std::get_if<McShaneScalar>(&f.variant())) {
    for (int j = 0; j < ms->points.n(); ++j) r = std::max(r, 2.0 * ms->points.norm(j) + 1.0);
  }
  return r;
}

// RayBump pair sampling stays off a tiny ball around the origin where the
// direction term is numerically meaningless.
bool admissible(const LipschitzFn& f, const Vec& x) {
  if (std::holds_alternative<RayBump>(f.variant()))
    return f.domain().norm(x) >= 1e-12;
  return true;
}

struct PairRatio {
  double value = 0.0;
  bool ok = false;
};

PairRatio ratio_of(const LipschitzFn& f, const Vec& x0, const Vec& x1, Vec& dx) {
  for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = x0[i] - x1[i];
  const double d = f.domain().norm(dx);
  if (d < 1e-12 || !admissible(f, x0) || !admissible(f, x1)) return {};
  Vec f0 = f.eval(x0);
  Vec f1 = f.eval(x1);
  for (std::size_t i = 0; i < f0.size(); ++i) f0[i] -= f1[i];
  return {f.codomain().norm(f0) / d, true};
}

}  // namespace

LipLowerEstimate lip_constant_lower_mc(const LipschitzFn& f, std::uint64_t samples,
                                       int refine_iters, std::uint64_t seed) {
  if (samples < 2) throw input_error("lip_constant_lower_mc: samples must be >= 2");
  const std::size_t dim = static_cast<std::size_t>(f.domain().dim());
  const double radius = sampling_radius(f);

  LipLowerEstimate best;
  Vec dx(dim);
  auto consider = [&](const Vec& x0, const Vec& x1) {
    PairRatio r = ratio_of(f, x0, x1, dx);
    if (r.ok && r.value > best.value) {
      best.value = r.value;
      best.x0 = x0;
      best.x1 = x1;
    }
  };

  // Structured pairs around the construction's own anchors.
  auto anchor_pairs = [&](const VectorTuple& centers, const std::vector<double>* scales) {
    for (int j = 0; j < centers.n(); ++j) {
      const double aj = scales ? (*scales)[static_cast<std::size_t>(j)] : 1.0;
      Vec c = centers.vectors[static_cast<std::size_t>(j)];
      for (double& v : c) v *= aj;
      Vec shrunk = c, grown = c;
      for (double& v : shrunk) v *= 0.7;
      for (double& v : grown) v *= 1.3;
      consider(c, shrunk);
      consider(c, grown);
      for (int rep = 0; rep < 4; ++rep) {
        Vec off = c;
        for (std::size_t i = 0; i < dim; ++i)
          off[i] += 0.2 * rng::gaussian_at(rng::derive_seed(seed, 1000 + j), rng::streams::lip_pairs,
                                           static_cast<std::uint64_t>(rep) * dim + i);
        consider(c, off);
      }
    }
  };
  if (const auto* sb = std::get_if<SectorBump>(&f.variant())) {
    anchor_pairs(sb->centers, &sb->scales);
  } else if (const auto* rb = std::get_if<RayBump>(&f.variant())) {
    anchor_pairs(rb->centers, nullptr);
  } else if (const auto* ms = std::get_if<McShaneScalar>(&f.variant())) {
    for (int j = 0; j < ms->points.n(); ++j)
      for (int k = j + 1; k < ms->points.n(); ++k)
        consider(ms->points.vectors[static_cast<std::size_t>(j)],
                 ms->points.vectors[static_cast<std::size_t>(k)]);
  } else {
    Vec u(dim), u2(dim);
    for (std::size_t i = 0; i < dim; ++i)
      u[i] = rng::gaussian_at(rng::derive_seed(seed, 7), rng::streams::lip_pairs, i);
    for (std::size_t i = 0; i < dim; ++i) u2[i] = 2.0 * u[i];
    consider(u, u2);
  }

  // Random pairs.
  Vec x0(dim), x1(dim);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < dim; ++i) {
      x0[i] = 0.5 * radius * rng::gaussian_at(seed, rng::streams::lip_pairs, s, 16 + static_cast<std::uint32_t>(i));
      x1[i] = 0.5 * radius *
              rng::gaussian_at(seed, rng::streams::lip_pairs, s, 16 + 1024 + static_cast<std::uint32_t>(i));
    }
    consider(x0, x1);
  }

  // Local refinement of the best pair.
  if (!best.x0.empty()) {
    const std::uint64_t rseed = rng::derive_seed(seed, 99);
    double step = 0.25 * f.domain().norm([&] {
      Vec d(dim);
      for (std::size_t i = 0; i < dim; ++i) d[i] = best.x0[i] - best.x1[i];
      return d;
    }());
    for (int it = 0; it < refine_iters; ++it) {
      Vec cand0 = best.x0, cand1 = best.x1;
      Vec& target = (it % 2 == 0) ? cand0 : cand1;
      for (std::size_t i = 0; i < dim; ++i)
        target[i] += step * rng::gaussian_at(rseed, rng::streams::lip_pairs,
                                             static_cast<std::uint64_t>(it), static_cast<std::uint32_t>(i));
      PairRatio r = ratio_of(f, cand0, cand1, dx);
      if (r.ok && r.value > best.value) {
        best.value = r.value;
        best.x0 = std::move(cand0);
        best.x1 = std::move(cand1);
      } else {
        step *= 0.9;
      }
    }
  }
  return best;
}

double finite_data_quotient(const VectorTuple& points, const VectorTuple& values) {
  if (points.vectors.size() != values.vectors.size())
    throw input_error("finite_data_quotient: points/values size mismatch");
  const int n = points.n();
  Vec dx(static_cast<std::size_t>(points.dim()));
  Vec dy(static_cast<std::size_t>(values.dim()));
  double best = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const Vec& pj = points.vectors[static_cast<std::size_t>(j)];
      const Vec& pk = points.vectors[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = pj[i] - pk[i];
      const double d = points.space.norm(dx);
      if (d == 0.0) throw input_error("finite_data_quotient: coincident points");
      const Vec& vj = values.vectors[static_cast<std::size_t>(j)];
      const Vec& vk = values.vectors[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < dy.size(); ++i) dy[i] = vj[i] - vk[i];
      best = std::max(best, values.space.norm(dy) / d);
    }
  return best;
}

SectorSeparationReport validate_sector_separation(const LipschitzFn& f, std::uint64_t trials,
                                                  std::uint64_t seed) {
  const auto* sb = std::get_if<SectorBump>(&f.variant());
  if (!sb) throw input_error("validate_sector_separation: not a sector bump");
  SectorSeparationReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  const int n = sb->centers.n();
  if (n < 2) return rep;
  Vec diff(static_cast<std::size_t>(f.domain().dim()));
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto u = rng::uniforms2(seed, rng::streams::separation, t, 100);
    auto uv = rng::uniforms2(seed, rng::streams::separation, t, 101);
    int j = std::min(n - 1, static_cast<int>(u[0] * n));
    int k = std::min(n - 2, static_cast<int>(u[1] * (n - 1)));
    if (k >= j) ++k;
    const double a = 20.0 * uv[0] - 10.0;
    const double b = 20.0 * uv[1] - 10.0;
    const double denom = std::sqrt(a * a + b * b);
    if (denom < 1e-9) continue;
    const Vec& xj = sb->centers.vectors[static_cast<std::size_t>(j)];
    const Vec& xk = sb->centers.vectors[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a * xj[i] - b * xk[i];
    rep.min_ratio = std::min(rep.min_ratio, f.domain().norm(diff) / denom);
    ++rep.trials;
  }
  rep.passed = rep.min_ratio >= 1.0 - 1e-9;
  return rep;
}

}  // namespace banach
