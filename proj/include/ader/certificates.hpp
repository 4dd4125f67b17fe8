#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ader/chain.hpp"
#include "ader/separation.hpp"

namespace ader {

/// Weighted contact pairs balancing the two sides of a containment chain:
///   sum λ_i y_i a_i^T = sum μ_j z_j b_j^T,  sum λ_i a_i = sum μ_j b_j = 0.
/// Necessary at affinely-optimal positions; sufficient when an ellipsoid
/// occupies the middle or both bounding slots.
struct AderCertificate {
  std::vector<ContactPair> inner;
  Vector inner_weights;
  std::vector<ContactPair> outer;
  Vector outer_weights;

  int size() const { return static_cast<int>(inner.size() + outer.size()); }
  Matrix inner_matrix() const;      // sum λ_i y_i a_i^T
  Matrix outer_matrix() const;
  Vector inner_normal_sum() const;  // sum λ_i a_i
  Vector outer_normal_sum() const;
  double inner_trace() const;       // sum λ_i <y_i, a_i>
  double outer_trace() const;
};

/// Witness that the non-separation condition fails: a direction (A, v, w)
/// along which every inner contact outgrows every outer contact by at least
/// `margin`.  Doubles as the descent direction of the optimizer.
struct Falsifier {
  enum class Form {
    General,        // min_i <a_i, A y_i + v>  >=  max_j <b_j, A z_j + w> + margin
    EuclideanBall,  // same with normalized sphere contacts (y-c)/r, (z-d)/R
    RadialSlack,    // vacuous: a contact side was empty because the chain radii are not extremal
  };
  Form form = Form::General;
  Matrix a;
  Vector v, w;
  double margin = 0.0;
};

using CertificateSearch = std::variant<AderCertificate, Falsifier>;

struct FindCertificateOptions {
  double contact_tol = 1e-7;  // eps-active band for contact extraction
  double feas_tol = 1e-9;     // intersection acceptance in the separation LP
};

/// Searches for an Ader certificate of the chain from its eps-active
/// contacts; produces a falsifier when the contact hulls are separated.
/// Chains with an ellipsoid middle (or homothetic ellipsoid bounds) run in
/// the smaller symmetric-matrix ambient space; their falsifiers use the
/// EuclideanBall form.
CertificateSearch find_certificate(const ContainmentChain& chain, double tol = 1e-7);
CertificateSearch find_certificate(const ContainmentChain& chain, const FindCertificateOptions& opts);

struct CheckEntry {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

struct CertificateReport {
  std::vector<CheckEntry> checks;
  bool pass = false;
  double inner_trace = 0.0;
  double outer_trace = 0.0;
  // Weighted contact-point sums, recorded for inspection only.
  Vector weighted_inner_points;
  Vector weighted_outer_points;
};

/// Re-derives every certificate invariant against the chain and reports
/// per-check residuals; never throws on a failing certificate.
CertificateReport verify_certificate(const ContainmentChain& chain, const AderCertificate& cert,
                                     double tol = 1e-7);

/// Pivots the certificate's weights to a basic solution; the support then
/// obeys (n+1)^2 in general and n(n+5)/2 + 1 for Euclidean chains.
AderCertificate reduce_certificate(const AderCertificate& cert, const ContainmentChain& chain);

/// Cardinality cap the reduced certificate must meet for this chain.
int certificate_cardinality_bound(const ContainmentChain& chain);

/// Affine transport: points By + t, normals B^-T a, weights unchanged.
AderCertificate transport_certificate(const AderCertificate& cert, const Matrix& b, const Vector& t);
ContainmentChain transport_chain(const ContainmentChain& chain, const Matrix& b, const Vector& t);

/// Affine normalization onto a unit-ball middle.  Direct when the middle is
/// an ellipsoid; for ball-shaped (homothetic ellipsoid) bounds the chain is
/// inverted so the middle becomes the ball, swapping the two contact sides.
class EuclideanNormalization {
 public:
  bool swapped = false;
  Matrix pre;        // original -> pre-mapped frame, x -> pre x + pre_shift
  Vector pre_shift;
  std::optional<ContainmentChain> normalized;
  double pm_r = 1.0, pm_R = 1.0;  // pre-mapped chain data (swap bookkeeping)
  Vector pm_c, pm_d;

  AderCertificate pull_back(const AderCertificate& cert) const;
  AderCertificate push_forward(const AderCertificate& cert) const;
};

bool euclidean_applicable(const ContainmentChain& chain);

/// Throws std::invalid_argument when no ellipsoid occupies a usable slot.
EuclideanNormalization euclidean_specialize(const ContainmentChain& chain);

struct HomothetyReport {
  bool pass = false;
  std::vector<Vector> normals;  // outer normals of common supporting hyperplanes
};

/// Necessary condition for R to be the minimal homothety factor with
/// K ⊆ R C + v: the common supporting normals must capture 0 in their hull.
HomothetyReport homothety_optimality_check(const Body& k, const Body& c, double big_r,
                                           const Vector& v, double tol = 1e-7);

// Lower-level searches shared with the optimizer.
struct EuclideanSearchResult {
  bool found = false;
  Vector lam, mu;          // convex weights over the two contact vector lists
  Matrix decomposition;    // sum lam p p^T when found
  Matrix a;                // falsifier data otherwise
  Vector v, w;
  double margin = 0.0;
  double residual = 0.0;   // phase-1 infeasibility of the intersection LP
};

/// Symmetric-space search over unit-sphere contact vectors of a ball-middle
/// chain: inner vectors P, outer vectors Q.
EuclideanSearchResult euclidean_certificate_search(const std::vector<Vector>& p,
                                                   const std::vector<Vector>& q, double feas_tol);

/// Builds the normalized certificate of a ball-middle chain from sphere
/// contact vectors and their convex search weights.
AderCertificate assemble_ball_certificate(const std::vector<Vector>& p, const Vector& lam,
                                          const std::vector<Vector>& q, const Vector& mu,
                                          const Vector& c, const Vector& d);

}  // namespace ader
