#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace banach {

using Vec = std::vector<double>;

// Finite-dimensional (weighted) l_p space, 1 <= p <= inf. Infinity is a
// distinguished tag, never a float sentinel, so norm kernels branch on the
// tag instead of comparing against IEEE infinity.
class NormedSpace {
 public:
  enum class Kind { lp, weighted_lp };

  static NormedSpace lp(double p, int dim);
  static NormedSpace linf(int dim);
  static NormedSpace weighted_lp(double p, Vec weights);
  static NormedSpace weighted_linf(Vec weights);

  Kind kind() const { return kind_; }
  bool is_inf() const { return inf_; }
  double p() const { return p_; }  // meaningful only when !is_inf()
  int dim() const { return dim_; }
  const Vec& weights() const { return weights_; }
  bool hilbert() const { return !inf_ && p_ == 2.0; }

  double norm(std::span<const double> v) const;
  std::string describe() const;

  friend bool operator==(const NormedSpace&, const NormedSpace&);

 private:
  NormedSpace(Kind kind, bool inf, double p, int dim, Vec weights);

  Kind kind_;
  bool inf_;
  double p_;
  int dim_;
  Vec weights_;  // empty for plain lp
};

// Nonempty list of same-dimension vectors together with their space.
struct VectorTuple {
  NormedSpace space;
  std::vector<Vec> vectors;

  VectorTuple(NormedSpace s, std::vector<Vec> v);
  int n() const { return static_cast<int>(vectors.size()); }
  int dim() const { return space.dim(); }
  double norm(int j) const { return space.norm(vectors[static_cast<std::size_t>(j)]); }
  double sum_norm_sq() const;
};

// Dense row-major matrix between two spaces.
struct LinearMap {
  NormedSpace domain;
  NormedSpace codomain;
  Vec matrix;  // rows() x cols(), row-major

  LinearMap(NormedSpace dom, NormedSpace cod, Vec m);
  static LinearMap identity(const NormedSpace& s);

  int rows() const { return codomain.dim(); }
  int cols() const { return domain.dim(); }
  double at(int r, int c) const {
    return matrix[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols()) +
                  static_cast<std::size_t>(c)];
  }
  Vec apply(std::span<const double> x) const;
  void apply_into(std::span<const double> x, Vec& out) const;
  Vec column(int c) const;
};

struct OperatorNormOptions {
  int restarts = 32;
  int iters = 200;
  std::uint64_t seed = 0;
};

struct OperatorNormResult {
  double value = 0.0;
  bool certified = false;
};

// sup_{||x||_dom = 1} ||Tx||_cod. Exact for Hilbert->Hilbert (largest
// singular value), any domain l_p -> l_inf (per-row dual norms), l_1 -> any
// (per-column norms), and 2-d Euclidean domains (angle scan); otherwise a
// projected-ascent lower estimate with certified = false.
OperatorNormResult operator_norm(const LinearMap& T, const OperatorNormOptions& opt = {});

// inf_{||x||_dom = 1} ||Tx||_cod; 0 when the matrix is column-rank-deficient.
// Exact for Hilbert->Hilbert and 2-d Euclidean domains; otherwise a
// projected-descent upper estimate with certified = false.
OperatorNormResult min_gain(const LinearMap& T, const OperatorNormOptions& opt = {});

}  // namespace banach
