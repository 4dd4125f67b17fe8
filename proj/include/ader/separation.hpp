#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ader/linalg.hpp"

namespace ader {

struct PointSet {
  std::vector<Vector> points;
  std::vector<std::string> labels;  // optional back-references

  int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

/// Linear subspace given by an orthonormal basis (columns).
struct Subspace {
  Matrix basis;  // D x k, orthonormal columns; k may be 0

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }

  static Subspace full(int d) {
    return Subspace{Matrix::Identity(d, d)};
  }
  static Subspace span(const Matrix& columns, int d) {
    Matrix b = linalg::orthonormal_basis(columns);
    if (b.rows() == 0) b = Matrix(d, 0);
    return Subspace{b};
  }
  static Subspace coordinate(int d, int first_k) {
    return Subspace{Matrix::Identity(d, d).leftCols(first_k)};
  }
};

/// conv(K) and conv(L) miss each other inside U: a functional a + v / a + w
/// with a in U, v, w in U^perp keeps them strictly apart by `margin`.
struct Separated {
  Vector a;
  Vector v;
  Vector w;
  double margin;
};

/// conv(K) ∩ conv(L) ∩ U contains `point`, exhibited by convex weights on
/// each side.
struct Intersecting {
  Vector point;
  Vector combo_k;  // weights over K, >= 0, sum 1
  Vector combo_l;
};

using SeparationWitness = std::variant<Separated, Intersecting>;

struct SeparateOptions {
  double feas_tol = 1e-9;  // phase-1 acceptance, relative to the point scale
};

/// Decides conv(K) ∩ conv(L) ∩ U = ∅ for finite point sets.  Intersection is
/// decided by a primal feasibility LP; otherwise the separating triple is the
/// margin-maximal functional under an l1 normalization of (a, v, w).
SeparationWitness separate(const PointSet& k, const PointSet& l, const Subspace& u,
                           const SeparateOptions& opts = {});

/// Pivots an intersection witness to a basic solution with small support,
/// keeping the reconstructed point fixed.  Throws ReductionInfeasible when
/// `cap` is below what a basic solution achieves.  cap < 0 selects the
/// Kirchberger default 2(D+1) - dim(U).
Intersecting reduce_support(const Intersecting& witness, const PointSet& k, const PointSet& l,
                            const Subspace& u, int cap = -1);

/// Worst-case instance for the Kirchberger-style bound: point sets whose
/// unique common point in U needs full-weight combinations on both sides.
struct TightnessInstance {
  PointSet k;
  PointSet l;
  Subspace u;
  Vector intersection;  // (1/(3n-d)) * sum_{i<=d} e_i
};
TightnessInstance tightness_instance(int n, int d);

int support_size(const Vector& weights, double tol = 1e-10);

}  // namespace ader
