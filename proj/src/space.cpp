#include "banachlab/space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "banachlab/errors.hpp"
#include "banachlab/kernels.hpp"
#include "banachlab/rng.hpp"

namespace banach {

namespace {

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw input_error("p must be >= 1");
}

void check_dim(int dim) {
  if (dim < 1) throw input_error("dim must be >= 1");
}

void check_weights(const Vec& w) {
  if (w.empty()) throw input_error("weights must be nonempty");
  for (double wi : w)
    if (!(wi > 0.0) || !std::isfinite(wi)) throw input_error("weights must be strictly positive");
}

}  // namespace

NormedSpace::NormedSpace(Kind kind, bool inf, double p, int dim, Vec weights)
    : kind_(kind), inf_(inf), p_(p), dim_(dim), weights_(std::move(weights)) {}

NormedSpace NormedSpace::lp(double p, int dim) {
  check_p(p);
  check_dim(dim);
  return NormedSpace(Kind::lp, false, p, dim, {});
}

NormedSpace NormedSpace::linf(int dim) {
  check_dim(dim);
  return NormedSpace(Kind::lp, true, 0.0, dim, {});
}

NormedSpace NormedSpace::weighted_lp(double p, Vec weights) {
  check_p(p);
  check_weights(weights);
  int d = static_cast<int>(weights.size());
  return NormedSpace(Kind::weighted_lp, false, p, d, std::move(weights));
}

NormedSpace NormedSpace::weighted_linf(Vec weights) {
  check_weights(weights);
  int d = static_cast<int>(weights.size());
  return NormedSpace(Kind::weighted_lp, true, 0.0, d, std::move(weights));
}

double NormedSpace::norm(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != dim_) throw input_error("vector dimension mismatch");
  const double* x = v.data();
  const std::size_t n = v.size();
  if (kind_ == Kind::lp) {
    if (inf_) return kernels::max_abs(x, n);
    if (p_ == 1.0) return kernels::sum_abs(x, n);
    if (p_ == 2.0) return std::sqrt(kernels::sum_sq(x, n));
    const double m = kernels::max_abs(x, n);
    if (m == 0.0) return 0.0;
    return m * std::pow(kernels::sum_abs_pow_scaled(x, n, 1.0 / m, p_), 1.0 / p_);
  }
  const double* w = weights_.data();
  if (inf_) return kernels::wmax_abs(x, w, n);
  if (p_ == 1.0) return kernels::wsum_abs(x, w, n);
  if (p_ == 2.0) return std::sqrt(kernels::wsum_sq(x, w, n));
  const double m = kernels::max_abs(x, n);
  if (m == 0.0) return 0.0;
  return m * std::pow(kernels::wsum_abs_pow_scaled(x, w, n, 1.0 / m, p_), 1.0 / p_);
}

std::string NormedSpace::describe() const {
  std::string s = kind_ == Kind::weighted_lp ? "weighted l_" : "l_";
  if (inf_) {
    s += "inf";
  } else if (p_ == static_cast<double>(static_cast<long long>(p_))) {
    s += std::to_string(static_cast<long long>(p_));
  } else {
    s += std::to_string(p_);
  }
  s += "^" + std::to_string(dim_);
  return s;
}

bool operator==(const NormedSpace& a, const NormedSpace& b) {
  return a.kind_ == b.kind_ && a.inf_ == b.inf_ && (a.inf_ || a.p_ == b.p_) &&
         a.dim_ == b.dim_ && a.weights_ == b.weights_;
}

VectorTuple::VectorTuple(NormedSpace s, std::vector<Vec> v)
    : space(std::move(s)), vectors(std::move(v)) {
  if (vectors.empty()) throw input_error("tuple must contain at least one vector");
  for (const Vec& x : vectors)
    if (static_cast<int>(x.size()) != space.dim())
      throw input_error("tuple vector dimension mismatch");
}

double VectorTuple::sum_norm_sq() const {
  double s = 0.0;
  for (const Vec& x : vectors) {
    double nx = space.norm(x);
    s += nx * nx;
  }
  return s;
}

LinearMap::LinearMap(NormedSpace dom, NormedSpace cod, Vec m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
  if (matrix.size() != static_cast<std::size_t>(domain.dim()) *
                           static_cast<std::size_t>(codomain.dim()))
    throw input_error("matrix shape does not match domain/codomain");
}

LinearMap LinearMap::identity(const NormedSpace& s) {
  Vec m(static_cast<std::size_t>(s.dim()) * static_cast<std::size_t>(s.dim()), 0.0);
  for (int i = 0; i < s.dim(); ++i)
    m[static_cast<std::size_t>(i) * static_cast<std::size_t>(s.dim()) +
      static_cast<std::size_t>(i)] = 1.0;
  return LinearMap(s, s, std::move(m));
}

void LinearMap::apply_into(std::span<const double> x, Vec& out) const {
  if (static_cast<int>(x.size()) != cols()) throw input_error("apply: dimension mismatch");
  out.resize(static_cast<std::size_t>(rows()));
  const std::size_t c = static_cast<std::size_t>(cols());
  for (int r = 0; r < rows(); ++r)
    out[static_cast<std::size_t>(r)] =
        kernels::dot(matrix.data() + static_cast<std::size_t>(r) * c, x.data(), c);
}

Vec LinearMap::apply(std::span<const double> x) const {
  Vec out;
  apply_into(x, out);
  return out;
}

Vec LinearMap::column(int c) const {
  Vec out(static_cast<std::size_t>(rows()));
  for (int r = 0; r < rows(); ++r) out[static_cast<std::size_t>(r)] = at(r, c);
  return out;
}

namespace {

bool plain_lp(const NormedSpace& s) { return s.kind() == NormedSpace::Kind::lp; }

// ||.||_q dual to the unweighted l_p norm of the domain.
double dual_norm(std::span<const double> z, double p, bool p_inf) {
  const std::size_t n = z.size();
  if (p_inf) return kernels::sum_abs(z.data(), n);  // dual of l_inf is l_1
  if (p == 1.0) return kernels::max_abs(z.data(), n);
  if (p == 2.0) return std::sqrt(kernels::sum_sq(z.data(), n));
  const double q = p / (p - 1.0);
  const double m = kernels::max_abs(z.data(), n);
  if (m == 0.0) return 0.0;
  return m * std::pow(kernels::sum_abs_pow_scaled(z.data(), n, 1.0 / m, q), 1.0 / q);
}

Eigen::MatrixXd scaled_for_hilbert(const LinearMap& T) {
  Eigen::MatrixXd m(T.rows(), T.cols());
  for (int r = 0; r < T.rows(); ++r)
    for (int c = 0; c < T.cols(); ++c) m(r, c) = T.at(r, c);
  if (T.codomain.kind() == NormedSpace::Kind::weighted_lp)
    for (int r = 0; r < T.rows(); ++r)
      m.row(r) *= std::sqrt(T.codomain.weights()[static_cast<std::size_t>(r)]);
  if (T.domain.kind() == NormedSpace::Kind::weighted_lp)
    for (int c = 0; c < T.cols(); ++c)
      m.col(c) /= std::sqrt(T.domain.weights()[static_cast<std::size_t>(c)]);
  return m;
}

bool column_rank_deficient(const LinearMap& T) {
  if (T.rows() < T.cols()) return true;
  Eigen::MatrixXd m(T.rows(), T.cols());
  for (int r = 0; r < T.rows(); ++r)
    for (int c = 0; c < T.cols(); ++c) m(r, c) = T.at(r, c);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.rank() < T.cols();
}

// Scan ||T(cos t, sin t)|| over [0, pi) and refine the bracket around the
// best grid point; the objective is pi-periodic for any norm.
double angle_scan(const LinearMap& T, bool maximize) {
  constexpr int kGrid = 4096;
  Vec x(2), y;
  auto value = [&](double t) {
    x[0] = std::cos(t);
    x[1] = std::sin(t);
    T.apply_into(x, y);
    return T.codomain.norm(y);
  };
  const double pi = std::acos(-1.0);
  double best_t = 0.0, best_v = value(0.0);
  for (int i = 1; i < kGrid; ++i) {
    double t = pi * i / kGrid;
    double v = value(t);
    if (maximize ? (v > best_v) : (v < best_v)) {
      best_v = v;
      best_t = t;
    }
  }
  double lo = best_t - pi / kGrid, hi = best_t + pi / kGrid;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    bool keep_left = maximize ? (value(m1) > value(m2)) : (value(m1) < value(m2));
    if (keep_left)
      hi = m2;
    else
      lo = m1;
  }
  double t = 0.5 * (lo + hi);
  return maximize ? std::max(value(t), best_v) : std::min(value(t), best_v);
}

// Subgradient of the codomain norm at y (any (weighted) l_p).
void norm_subgradient(const NormedSpace& s, const Vec& y, Vec& g) {
  const int d = s.dim();
  g.assign(static_cast<std::size_t>(d), 0.0);
  const bool weighted = s.kind() == NormedSpace::Kind::weighted_lp;
  auto wi = [&](int i) { return weighted ? s.weights()[static_cast<std::size_t>(i)] : 1.0; };
  if (s.is_inf()) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < d; ++i) {
      double v = wi(i) * std::fabs(y[static_cast<std::size_t>(i)]);
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    g[static_cast<std::size_t>(arg)] =
        wi(arg) * (y[static_cast<std::size_t>(arg)] >= 0.0 ? 1.0 : -1.0);
    return;
  }
  const double p = s.p();
  if (p == 1.0) {
    for (int i = 0; i < d; ++i)
      g[static_cast<std::size_t>(i)] =
          wi(i) * (y[static_cast<std::size_t>(i)] > 0.0 ? 1.0
                   : y[static_cast<std::size_t>(i)] < 0.0 ? -1.0 : 0.0);
    return;
  }
  double ny = s.norm(y);
  if (ny <= 0.0) return;
  for (int i = 0; i < d; ++i) {
    double v = y[static_cast<std::size_t>(i)];
    g[static_cast<std::size_t>(i)] =
        wi(i) * (v >= 0.0 ? 1.0 : -1.0) * std::pow(std::fabs(v) / ny, p - 1.0);
  }
}

// Projected subgradient ascent/descent on ||Tx|| over the unit sphere of the
// domain norm; returns the best objective value seen over all starts.
double sphere_search(const LinearMap& T, bool maximize, const OperatorNormOptions& opt) {
  const int dn = T.cols();
  Vec x(static_cast<std::size_t>(dn)), y, sub, grad(static_cast<std::size_t>(dn)), cand;
  auto normalize = [&](Vec& v) {
    double nv = T.domain.norm(v);
    if (nv <= 0.0) return false;
    for (double& c : v) c /= nv;
    return true;
  };
  auto objective = [&](const Vec& v) {
    T.apply_into(v, y);
    return T.codomain.norm(y);
  };

  double best = maximize ? 0.0 : std::numeric_limits<double>::infinity();
  const int total_starts = dn + std::max(1, opt.restarts);
  for (int s = 0; s < total_starts; ++s) {
    if (s < dn) {
      std::fill(x.begin(), x.end(), 0.0);
      x[static_cast<std::size_t>(s)] = 1.0;  // basis starts first
    } else {
      for (int i = 0; i < dn; ++i)
        x[static_cast<std::size_t>(i)] = rng::gaussian_at(
            rng::derive_seed(opt.seed, static_cast<std::uint64_t>(s)), rng::streams::opnorm,
            static_cast<std::uint64_t>(i));
    }
    if (!normalize(x)) continue;
    double cur = objective(x);
    best = maximize ? std::max(best, cur) : std::min(best, cur);

    for (int it = 0; it < opt.iters; ++it) {
      T.apply_into(x, y);
      norm_subgradient(T.codomain, y, sub);
      // grad = T^t sub
      for (int c = 0; c < dn; ++c) {
        double acc = 0.0;
        for (int r = 0; r < T.rows(); ++r) acc += T.at(r, c) * sub[static_cast<std::size_t>(r)];
        grad[static_cast<std::size_t>(c)] = acc;
      }
      double gn = std::sqrt(kernels::sum_sq(grad.data(), grad.size()));
      if (gn == 0.0) break;
      const double dir = maximize ? 1.0 : -1.0;
      bool improved = false;
      double eta = 1.0 / gn;
      for (int h = 0; h < 24; ++h, eta *= 0.5) {
        cand = x;
        kernels::axpy(cand.data(), dir * eta, grad.data(), cand.size());
        if (!normalize(cand)) continue;
        double v = objective(cand);
        if (maximize ? (v > cur) : (v < cur)) {
          x = cand;
          cur = v;
          improved = true;
          break;
        }
      }
      if (!improved) break;
      best = maximize ? std::max(best, cur) : std::min(best, cur);
    }
  }
  return best;
}

}  // namespace

OperatorNormResult operator_norm(const LinearMap& T, const OperatorNormOptions& opt) {
  // Hilbert -> Hilbert: largest singular value of the rescaled matrix.
  if (T.domain.hilbert() && T.codomain.hilbert()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled_for_hilbert(T));
    return {svd.singularValues()(0), true};
  }
  // any unweighted l_p -> (weighted) l_inf: max over rows of the dual norm.
  if (plain_lp(T.domain) && T.codomain.is_inf()) {
    double best = 0.0;
    Vec row(static_cast<std::size_t>(T.cols()));
    for (int r = 0; r < T.rows(); ++r) {
      for (int c = 0; c < T.cols(); ++c) row[static_cast<std::size_t>(c)] = T.at(r, c);
      double w = T.codomain.kind() == NormedSpace::Kind::weighted_lp
                     ? T.codomain.weights()[static_cast<std::size_t>(r)]
                     : 1.0;
      best = std::max(best, w * dual_norm(row, T.domain.p(), T.domain.is_inf()));
    }
    return {best, true};
  }
  // l_1 -> any: max over columns.
  if (plain_lp(T.domain) && !T.domain.is_inf() && T.domain.p() == 1.0) {
    double best = 0.0;
    for (int c = 0; c < T.cols(); ++c) best = std::max(best, T.codomain.norm(T.column(c)));
    return {best, true};
  }
  // 2-d Euclidean domain: dense angle scan, exact to numerical tolerance.
  if (plain_lp(T.domain) && !T.domain.is_inf() && T.domain.p() == 2.0 && T.cols() == 2) {
    return {angle_scan(T, /*maximize=*/true), true};
  }
  return {sphere_search(T, /*maximize=*/true, opt), false};
}

OperatorNormResult min_gain(const LinearMap& T, const OperatorNormOptions& opt) {
  if (column_rank_deficient(T)) return {0.0, true};
  if (T.domain.hilbert() && T.codomain.hilbert()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled_for_hilbert(T));
    return {svd.singularValues()(svd.singularValues().size() - 1), true};
  }
  if (plain_lp(T.domain) && !T.domain.is_inf() && T.domain.p() == 2.0 && T.cols() == 2) {
    return {angle_scan(T, /*maximize=*/false), true};
  }
  return {sphere_search(T, /*maximize=*/false, opt), false};
}

}  // namespace banach
