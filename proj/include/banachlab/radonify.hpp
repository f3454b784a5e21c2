#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "banachlab/lipfun.hpp"
#include "banachlab/randomsum.hpp"
#include "banachlab/space.hpp"

namespace banach {

// Masses of finitely many disjoint atoms S_j, each with 0 < mu(S_j) < inf.
struct MeasureAtoms {
  std::vector<double> masses;

  explicit MeasureAtoms(std::vector<double> m);
  int n() const { return static_cast<int>(masses.size()); }
};

// phi = sum_j 1_{S_j} (x) x_j; induces the integral operator u_phi in
// l(L^2, X) whose norm is the Gaussian sum over the atom indicators.
struct SimpleFunction {
  MeasureAtoms atoms;
  VectorTuple values;

  SimpleFunction(MeasureAtoms a, VectorTuple v);
  int n() const { return atoms.n(); }
  bool is_zero() const;
};

SimpleFunction zero_like(const SimpleFunction& phi);

struct EllNormResult {
  double value = 0.0;           // sqrt of the estimated second moment
  SumEstimate second_moment;    // E || sum gamma_j mu_j^(1/2) x_j ||^2
  std::optional<double> exact;  // closed form sqrt(sum mu_j ||x_j||^2) in Hilbert spaces
};

// || u_phi ||_{l(L^2,X)}: the indicator system mu_j^{-1/2} 1_{S_j} is
// orthonormal, so the norm is the Gaussian second moment of (mu_j^{1/2} x_j).
EllNormResult ell_norm(const SimpleFunction& phi, std::uint64_t samples, std::uint64_t seed);

// (sum_j mu_j ||x_j||^2)^(1/2): the L^2(X) norm of phi.
double l2x_norm(const SimpleFunction& phi);

// f(phi): same atoms, values f(x_j). Requires f(0) = 0 (true of the library).
SimpleFunction lift(const LipschitzFn& f, const SimpleFunction& phi);

// Re-expresses both functions on one shared atom list. Identical atom lists
// pass through; otherwise strict mode is an error and default mode uses the
// disjoint union with zero-padding.
std::pair<SimpleFunction, SimpleFunction> align(const SimpleFunction& phi,
                                                const SimpleFunction& psi, bool strict = false);

struct LiftRatio {
  double ratio = 0.0;
  double margin = 0.0;  // 4-sigma propagated Monte Carlo margin
  SumEstimate numerator;
  SumEstimate denominator;
};

// || u_{f(phi)} - u_{f(psi)} ||_l / || u_phi - u_psi ||_l on common Gaussian
// draws; bounded by C_2(X) T_2(Y) ||f||_Lip.
LiftRatio lift_lipschitz_ratio(const LipschitzFn& f, const SimpleFunction& phi,
                               const SimpleFunction& psi, std::uint64_t samples,
                               std::uint64_t seed);

}  // namespace banach
