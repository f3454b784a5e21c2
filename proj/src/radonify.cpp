#include "banachlab/radonify.hpp"

#include <cmath>

#include "banachlab/errors.hpp"
#include "banachlab/rng.hpp"

namespace banach {

MeasureAtoms::MeasureAtoms(std::vector<double> m) : masses(std::move(m)) {
  if (masses.empty()) throw input_error("atom list must be nonempty");
  for (double mu : masses)
    if (!(mu > 0.0) || !std::isfinite(mu)) throw input_error("atom masses must be in (0, inf)");
}

SimpleFunction::SimpleFunction(MeasureAtoms a, VectorTuple v)
    : atoms(std::move(a)), values(std::move(v)) {
  if (atoms.n() != values.n()) throw input_error("one value vector per atom required");
}

bool SimpleFunction::is_zero() const {
  for (const Vec& x : values.vectors)
    for (double c : x)
      if (c != 0.0) return false;
  return true;
}

SimpleFunction zero_like(const SimpleFunction& phi) {
  std::vector<Vec> zeros(static_cast<std::size_t>(phi.n()),
                         Vec(static_cast<std::size_t>(phi.values.dim()), 0.0));
  return SimpleFunction(phi.atoms, VectorTuple(phi.values.space, std::move(zeros)));
}

namespace {

// The tuple (mu_j^(1/2) x_j) whose Gaussian second moment is ||u_phi||^2.
VectorTuple scaled_values(const SimpleFunction& phi) {
  std::vector<Vec> xs = phi.values.vectors;
  for (int j = 0; j < phi.n(); ++j) {
    const double c = std::sqrt(phi.atoms.masses[static_cast<std::size_t>(j)]);
    for (double& v : xs[static_cast<std::size_t>(j)]) v *= c;
  }
  return VectorTuple(phi.values.space, std::move(xs));
}

}  // namespace

EllNormResult ell_norm(const SimpleFunction& phi, std::uint64_t samples, std::uint64_t seed) {
  EllNormResult out;
  VectorTuple scaled = scaled_values(phi);
  out.second_moment = second_moment_mc(scaled, NoiseSpec::gaussian(), samples, seed);
  out.value = std::sqrt(out.second_moment.mean);
  if (phi.values.space.hilbert()) {
    double s = 0.0;
    for (int j = 0; j < phi.n(); ++j) {
      const double nx = phi.values.norm(j);
      s += phi.atoms.masses[static_cast<std::size_t>(j)] * nx * nx;
    }
    out.exact = std::sqrt(s);
  }
  return out;
}

double l2x_norm(const SimpleFunction& phi) {
  double s = 0.0;
  for (int j = 0; j < phi.n(); ++j) {
    const double nx = phi.values.norm(j);
    s += phi.atoms.masses[static_cast<std::size_t>(j)] * nx * nx;
  }
  return std::sqrt(s);
}

SimpleFunction lift(const LipschitzFn& f, const SimpleFunction& phi) {
  if (!(f.domain() == phi.values.space)) throw input_error("lift: phi not in dom f");
  std::vector<Vec> ys;
  ys.reserve(static_cast<std::size_t>(phi.n()));
  for (const Vec& x : phi.values.vectors) ys.push_back(f.eval(x));
  return SimpleFunction(phi.atoms, VectorTuple(f.codomain(), std::move(ys)));
}

std::pair<SimpleFunction, SimpleFunction> align(const SimpleFunction& phi,
                                                const SimpleFunction& psi, bool strict) {
  if (!(phi.values.space == psi.values.space))
    throw input_error("align: functions live in different spaces");
  if (phi.atoms.masses == psi.atoms.masses) return {phi, psi};
  if (strict) throw input_error("align: atom lists differ in strict mode");

  // Disjoint union: phi on its own atoms padded by zeros on psi's, and
  // conversely (the common refinement of the two partitions).
  std::vector<double> masses = phi.atoms.masses;
  masses.insert(masses.end(), psi.atoms.masses.begin(), psi.atoms.masses.end());
  const int dim = phi.values.dim();
  std::vector<Vec> a = phi.values.vectors;
  a.resize(masses.size(), Vec(static_cast<std::size_t>(dim), 0.0));
  std::vector<Vec> b(static_cast<std::size_t>(phi.n()), Vec(static_cast<std::size_t>(dim), 0.0));
  b.insert(b.end(), psi.values.vectors.begin(), psi.values.vectors.end());
  MeasureAtoms atoms(masses);
  return {SimpleFunction(atoms, VectorTuple(phi.values.space, std::move(a))),
          SimpleFunction(atoms, VectorTuple(phi.values.space, std::move(b)))};
}

LiftRatio lift_lipschitz_ratio(const LipschitzFn& f, const SimpleFunction& phi,
                               const SimpleFunction& psi, std::uint64_t samples,
                               std::uint64_t seed) {
  auto [a, b] = align(phi, psi);
  bool all_equal = true;
  for (int j = 0; j < a.n() && all_equal; ++j)
    all_equal = a.values.vectors[static_cast<std::size_t>(j)] ==
                b.values.vectors[static_cast<std::size_t>(j)];
  if (all_equal) throw input_error("lift_lipschitz_ratio: phi = psi (zero denominator)");

  SimpleFunction fa = lift(f, a);
  SimpleFunction fb = lift(f, b);

  auto difference = [](const SimpleFunction& u, const SimpleFunction& v) {
    std::vector<Vec> d = u.values.vectors;
    for (int j = 0; j < u.n(); ++j)
      for (int i = 0; i < u.values.dim(); ++i)
        d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -=
            v.values.vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return SimpleFunction(u.atoms, VectorTuple(u.values.space, std::move(d)));
  };

  SimpleFunction dnum = difference(fa, fb);
  SimpleFunction dden = difference(a, b);

  // Common draws: same seed, same atom count on both sides.
  EllNormResult num = ell_norm(dnum, samples, seed);
  EllNormResult den = ell_norm(dden, samples, seed);
  if (!(den.second_moment.mean > 0.0))
    throw input_error("lift_lipschitz_ratio: zero denominator");

  LiftRatio out;
  out.ratio = num.value / den.value;
  out.numerator = num.second_moment;
  out.denominator = den.second_moment;
  double rel = 0.0;
  if (num.second_moment.mean > 0.0)
    rel += 2.0 * num.second_moment.std_error / num.second_moment.mean;
  rel += 2.0 * den.second_moment.std_error / den.second_moment.mean;
  out.margin = out.ratio * rel;
  return out;
}

}  // namespace banach
