#pragma once

#include <optional>
#include <vector>

#include "ader/bodies.hpp"

namespace ader {

/// Shared frame for interpolating between two sandwiching ellipsoid pairs:
/// E0 is the unit ball, E1 has half-lengths `ratios` along the orthonormal
/// `axes`.  The inner pair is r0*E0 + c0, r1*E1 + c1; the outer pair
/// R0*E0 + d0, R1*E1 + d1.
struct MeanPath {
  Matrix axes;     // columns v^1..v^n
  Vector ratios;   // alpha_i > 0
  double r0 = 1.0, r1 = 1.0;
  double big_r0 = 1.0, big_r1 = 1.0;
  Vector c0, c1;   // inner centers
  Vector d0, d1;   // outer centers

  int dim() const { return static_cast<int>(ratios.size()); }
  void validate() const;
};

/// Per-axis interval for the outer-mean translation coefficients:
/// [1 - (1-lambda) beta^lambda, lambda beta^(lambda-1)] clipped to [0, 1].
struct TranslationWindow {
  Vector lo;
  Vector hi;

  bool admits(const Vector& mu, double tol = 1e-12) const;
  Vector midpoint() const { return 0.5 * (lo + hi); }
};

TranslationWindow translation_window(const Vector& betas, double lambda);

/// One side of a mean-ellipsoid construction: the interpolated ellipsoid,
/// the linear subspace where common boundary points can occur, and whether
/// contacts additionally require the two endpoint centers to coincide.
struct MeanResult {
  Ellipsoid ellipsoid;
  Matrix contact_subspace;       // orthonormal columns; may have 0 columns
  bool center_equality_required = false;
};

/// Half-lengths alpha_i^lambda along unchanged axes; lambda=0 gives the unit
/// ball, lambda=1 gives E.  E must be origin-centered.
Ellipsoid power_interpolate(const Ellipsoid& e, double lambda);

/// Inner mean r_lambda E_lambda + c_lambda, contained in the convex hull of
/// the endpoints (hence in any convex body containing both).  The contact
/// subspace is the alpha*r1/r0 ~ 1 axis cluster cut down orthogonally to
/// c0 - c1.
MeanResult inner_mean(const MeanPath& path, double lambda);

/// The weighted-square inequality behind the outer mean's translation:
/// lhs = ((1-mu)x + mu y)^2 / alpha^(2 lambda), rhs = (1-lambda)x^2 +
/// lambda y^2/alpha^2; lhs <= rhs whenever mu lies in the window.
struct ScalarInequality {
  double lhs;
  double rhs;
  bool equality_case;  // analytic: lambda in {0,1}, or alpha=1 & x=y, or x=y=0
};
ScalarInequality scalar_inequality_check(double alpha, double lambda, double mu, double x, double y);

/// Outer mean R_lambda E_lambda + d_lambda containing the intersection of
/// the endpoint ellipsoids; mu_i must sit in the window for
/// beta_i = (R1/R0) alpha_i.  Pass no mu to take window midpoints.
MeanResult outer_mean(const MeanPath& path, double lambda, const std::optional<Vector>& mu = std::nullopt);

struct SimultaneousMean {
  MeanResult inner;
  MeanResult outer;
  double r_lambda;
  double big_r_lambda;
  double log_ratio;  // log(R_lambda / r_lambda); linear in lambda by construction
};
SimultaneousMean simultaneous_mean(const MeanPath& path, double lambda,
                                   const std::optional<Vector>& mu = std::nullopt);

}  // namespace ader
