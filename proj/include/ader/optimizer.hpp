#pragma once

#include <optional>

#include "ader/certificates.hpp"

namespace ader {

struct Ball {
  Vector center;
  double radius = 0.0;
};

/// Minimum enclosing Euclidean ball, move-to-front combinatorial search with
/// support sets of at most n+1 points.  Deterministic (no shuffle).
Ball min_enclosing_ball(const std::vector<Vector>& points);

struct HomothetFit {
  double radius = 0.0;
  Vector center;
};

/// Largest r with r*shape + c ⊆ region (c free), as an LP over the region's
/// facets.  Works for any shape with a support function.
HomothetFit inner_homothet(const Polytope& region, const Body& shape);
HomothetFit inner_homothet(const Polytope& region, const Ellipsoid& shape);

/// Smallest R with region ⊆ R*shape + d (d free): the minimum enclosing ball
/// after mapping the shape to the unit ball.
HomothetFit outer_homothet(const Polytope& region, const Ellipsoid& shape);

enum class SolveStatus { CertifiedOptimal, ToleranceReached, IterationCap };

const char* to_string(SolveStatus s);

struct IterationRecord {
  int iter;
  double ratio;
  double margin;  // falsifier margin at this iterate (0 when a certificate appeared)
  double step;    // accepted line-search step
};

struct SolveResult {
  ContainmentChain chain;
  std::optional<AderCertificate> certificate;
  std::vector<IterationRecord> trace;
  SolveStatus status = SolveStatus::IterationCap;
  Matrix frame;  // linear map applied to the input bodies in the reported chain's frame

  double ratio() const { return chain.ratio(); }
};

struct SolveOptions {
  double opt_tol = 1e-9;
  int max_iter = 500;
  unsigned seed = 0;
  std::optional<Matrix> initial_frame;
};

/// Banach–Mazur distance position of a polytope with respect to the ball:
/// descends on the frame of K with the certificate search as the stopping
/// rule and its falsifiers as descent directions.  The reported chain lives
/// in K's original frame with a common ellipsoid shape on both sides.
SolveResult solve_distance_to_ball(const Polytope& k, double opt_tol = 1e-9, int max_iter = 500);
SolveResult solve_distance_to_ball(const Polytope& k, const SolveOptions& opts);

/// Affinely-optimal ball sandwich r*T(L1) + c ⊆ B^n ⊆ R*T(L2) + d over a
/// joint frame T of the two bodies.  The reported chain keeps the ball in
/// the middle with the frame applied to the bodies (recorded in `frame`).
SolveResult solve_ball_between(const Body& l1, const Body& l2, double opt_tol = 1e-9, int max_iter = 500);
SolveResult solve_ball_between(const Body& l1, const Body& l2, const SolveOptions& opts);

/// Interpolates two sandwiches of the same bodies through the mean-ellipsoid
/// construction; the log-ratio interpolates linearly.  Chains must carry
/// ellipsoids in matching slots (middle, or both bounds per chain).
ContainmentChain improve_by_mean(const ContainmentChain& a, const ContainmentChain& b, double lambda);

struct MaureyResult {
  Matrix subspace;      // orthonormal basis of the terminal subspace, frame coordinates
  Matrix projection;    // orthogonal projector onto it
  Polytope projected;   // terminal projected body in subspace coordinates
  SolveResult result;   // certified solve of the projected body
  bool unique_pair = true;
  bool via_distance_bound = false;  // d > n-1 pins uniqueness without probing
  double center_spread = 0.0;       // outer-center disagreement across restarts
  int depth = 0;                    // projection steps taken
};

/// Uniqueness probe for the distance-ellipsoid pair: restarts from random
/// orthogonal frames plus a mean-degeneracy test; on finding a second
/// optimal pair, projects onto the contact subspace and recurses.
MaureyResult maurey_reduce(const Polytope& k, double opt_tol = 1e-9, unsigned seed = 0,
                           int restarts = 8, int jobs = 1);

struct DiameterTriple {
  Vector y;
  Vector z;
  Vector functional;  // b with <y - z, b> = D(K, L)
};

struct DiamRadResult {
  SolveResult solve;
  double diameter = 0.0;  // D(K', L) at the optimal position K'
  double inradius = 0.0;  // r(K', L)
  std::vector<DiameterTriple> triples;
};

/// Minimizes D(AK, L)/r(AK, L) over invertible A for an origin-symmetric
/// norm body L, through the containment chain on the difference body.
DiamRadResult diameter_inradius_position(const Polytope& k, const Body& l, double opt_tol = 1e-9,
                                         int max_iter = 500);

struct GrunbaumPair {
  Polytope l1;
  Polytope l2;  // -l1
};

/// Chain inputs for Grünbaum-distance experiments: recentred K and its
/// reflection, to be fed to solve_ball_between.
GrunbaumPair grunbaum_chain(const Polytope& k);

}  // namespace ader
