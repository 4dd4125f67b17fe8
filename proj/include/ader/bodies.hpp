#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ader/linalg.hpp"

namespace ader {

/// A contact of two nested bodies: a point on both boundaries together with
/// an outer normal of a hyperplane supporting the outer body there.  The
/// normal is scaled so that <normal, point - ref> = 1 for the chain's
/// reference point.
struct ContactPair {
  Vector point;
  Vector normal;
  Vector ref;
};

/// Full-dimensional polytope kept in both representations: vertices and
/// facet halfspaces {x : <normal, x> <= offset} with unit normals.  Both
/// lists are deduplicated and lexicographically sorted, so equal bodies have
/// identical storage.
class Polytope {
 public:
  struct Facet {
    Vector normal;  // unit length
    double offset;
  };

  Polytope() = default;  // empty shell; fill through the factories

  static Polytope from_vertices(const std::vector<Vector>& points);
  static Polytope from_facets(const std::vector<Facet>& halfspaces);

  /// Adopts an already-consistent dual pair (e.g. an affine image of a valid
  /// polytope) without re-running the dual description.  Inputs are sorted
  /// and cheaply cross-checked only.
  static Polytope from_reps(std::vector<Vector> points, std::vector<Facet> halfspaces);

  int dim() const { return n_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  double scale() const { return scale_; }
  Vector centroid() const;

  bool contains(const Vector& x, double tol) const;

 private:
  void finish(std::vector<Vector> verts);

  int n_ = 0;
  double scale_ = 1.0;
  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
};

/// Ellipsoid {x : <x-center, Q (x-center)> <= 1} for symmetric positive
/// definite Q, with the spectral form cached: orthonormal axes v^i and
/// half-lengths alpha_i, Q = sum alpha_i^{-2} v^i (v^i)^T.
class Ellipsoid {
 public:
  Ellipsoid(Vector center, Matrix shape);
  static Ellipsoid unit_ball(int n);
  static Ellipsoid from_axes(const Vector& center, const Matrix& axes, const Vector& half_lengths);

  int dim() const { return static_cast<int>(center_.size()); }
  const Vector& center() const { return center_; }
  const Matrix& shape() const { return shape_; }
  const Matrix& axes() const { return axes_; }
  const Vector& half_lengths() const { return half_lengths_; }

  Matrix inverse_shape() const;
  Matrix sqrt_shape() const;      // Q^{1/2}
  Matrix inv_sqrt_shape() const;  // Q^{-1/2}, maps the unit ball onto this ellipsoid's shape

  double scale() const;
  bool is_ball(double tol = 1e-12) const;

 private:
  Vector center_;
  Matrix shape_;
  Matrix axes_;           // columns, ascending eigenvalue order of Q
  Vector half_lengths_;   // descending
};

/// Tagged union of the two representations.
class Body {
 public:
  Body() = default;  // empty polytope shell
  Body(Polytope p) : rep_(std::move(p)) {}
  Body(Ellipsoid e) : rep_(std::move(e)) {}

  bool is_polytope() const { return std::holds_alternative<Polytope>(rep_); }
  bool is_ellipsoid() const { return std::holds_alternative<Ellipsoid>(rep_); }
  const Polytope& polytope() const { return std::get<Polytope>(rep_); }
  const Ellipsoid& ellipsoid() const { return std::get<Ellipsoid>(rep_); }

  int dim() const;
  double scale() const;

 private:
  std::variant<Polytope, Ellipsoid> rep_;
};

/// h_body(u) = max_{x in body} <x, u>.
double support(const Body& body, const Vector& direction);

/// Minkowski functional of (body - base) at (point - base); exactly 1 on the
/// boundary.  base must be interior.
double gauge(const Body& body, const Vector& point, const Vector& base);

/// Largest violation of inner ⊆ outer, in outward-distance units, with a
/// witness point attaining it.  Nonpositive slack means contained.
struct InclusionReport {
  double slack;
  Vector witness;
};
InclusionReport inclusion_slack(const Body& inner, const Body& outer);

/// All eps-active contact pairs of inner ⊆ outer, normals normalized against
/// `ref`.  Continuum contact sets are discretized through polytope features;
/// coinciding ellipsoids fall back to a symmetric 2n-point axis sample.
std::vector<ContactPair> contacts(const Body& inner, const Body& outer, const Vector& ref, double tol);

/// {Bx + t : x in body} for invertible B.
Body affine_image(const Body& body, const Matrix& b, const Vector& t);

/// V-representation of wa*a + wb*b.  Exact for polytopes; ellipsoid summands
/// are replaced by an outer support-sampled approximation (testing aid).
Polytope minkowski_combine(const Body& a, const Body& b, double wa, double wb, int density = 64);

Vector interior_point(const Body& body);

Polytope reflect(const Polytope& p);  // -P

}  // namespace ader
