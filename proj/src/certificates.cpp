#include "ader/certificates.hpp"

#include <cmath>
#include <stdexcept>

#include "ader/errors.hpp"
#include "ader/lp.hpp"

namespace ader {

namespace {

// Folds an ellipsoid shape's own center into the chain translation, so all
// ellipsoid shapes can be treated as origin-centered.
void canonicalize_slot(Body& shape, Vector& shift, double radius) {
  if (!shape.is_ellipsoid()) return;
  const auto& e = shape.ellipsoid();
  if (e.center().norm() <= 1e-14 * std::max(1.0, e.scale())) return;
  shift += radius * e.center();
  shape = Body(Ellipsoid(Vector::Zero(e.dim()), e.shape()));
}

ContainmentChain canonicalized(const ContainmentChain& chain) {
  ContainmentChain c = chain;
  canonicalize_slot(c.inner_shape, c.c, c.r);
  canonicalize_slot(c.outer_shape, c.d, c.R);
  return c;
}

Vector unit(const Vector& v) { return v / v.norm(); }

}  // namespace

// ---------------------------------------------------------------------------
// AderCertificate accessors

Matrix AderCertificate::inner_matrix() const {
  const int n = inner.empty() ? 0 : static_cast<int>(inner[0].point.size());
  Matrix m = Matrix::Zero(n, n);
  for (size_t i = 0; i < inner.size(); ++i)
    m += inner_weights(static_cast<int>(i)) * inner[i].point * inner[i].normal.transpose();
  return m;
}

Matrix AderCertificate::outer_matrix() const {
  const int n = outer.empty() ? 0 : static_cast<int>(outer[0].point.size());
  Matrix m = Matrix::Zero(n, n);
  for (size_t j = 0; j < outer.size(); ++j)
    m += outer_weights(static_cast<int>(j)) * outer[j].point * outer[j].normal.transpose();
  return m;
}

Vector AderCertificate::inner_normal_sum() const {
  Vector s = Vector::Zero(inner.empty() ? 0 : inner[0].normal.size());
  for (size_t i = 0; i < inner.size(); ++i) s += inner_weights(static_cast<int>(i)) * inner[i].normal;
  return s;
}

Vector AderCertificate::outer_normal_sum() const {
  Vector s = Vector::Zero(outer.empty() ? 0 : outer[0].normal.size());
  for (size_t j = 0; j < outer.size(); ++j) s += outer_weights(static_cast<int>(j)) * outer[j].normal;
  return s;
}

double AderCertificate::inner_trace() const {
  double t = 0.0;
  for (size_t i = 0; i < inner.size(); ++i)
    t += inner_weights(static_cast<int>(i)) * inner[i].point.dot(inner[i].normal);
  return t;
}

double AderCertificate::outer_trace() const {
  double t = 0.0;
  for (size_t j = 0; j < outer.size(); ++j)
    t += outer_weights(static_cast<int>(j)) * outer[j].point.dot(outer[j].normal);
  return t;
}

// ---------------------------------------------------------------------------
// Euclidean normalization

bool euclidean_applicable(const ContainmentChain& chain) {
  if (chain.middle.is_ellipsoid()) return true;
  if (!chain.inner_shape.is_ellipsoid() || !chain.outer_shape.is_ellipsoid()) return false;
  const Matrix q1 = chain.inner_shape.ellipsoid().shape();
  const Matrix q2 = chain.outer_shape.ellipsoid().shape();
  // Homothetic shapes: q1 proportional to q2.
  const double s = q1.norm() / q2.norm();
  return (q1 - s * q2).norm() <= 1e-9 * q1.norm();
}

EuclideanNormalization euclidean_specialize(const ContainmentChain& chain_in) {
  const ContainmentChain chain = canonicalized(chain_in);
  const int n = chain.dim();
  EuclideanNormalization norm;

  if (chain.middle.is_ellipsoid()) {
    const auto& e = chain.middle.ellipsoid();
    norm.swapped = false;
    norm.pre = e.sqrt_shape();
    norm.pre_shift = -norm.pre * e.center();
    ContainmentChain out;
    out.inner_shape = affine_image(chain.inner_shape, norm.pre, Vector::Zero(n));
    out.c = norm.pre * chain.c + norm.pre_shift;
    out.r = chain.r;
    out.middle = Body(Ellipsoid::unit_ball(n));
    out.outer_shape = affine_image(chain.outer_shape, norm.pre, Vector::Zero(n));
    out.d = norm.pre * chain.d + norm.pre_shift;
    out.R = chain.R;
    norm.normalized = out;
    return norm;
  }

  if (!chain.inner_shape.is_ellipsoid() || !chain.outer_shape.is_ellipsoid())
    throw std::invalid_argument("euclidean normalization needs an ellipsoid middle or ellipsoid bounds");
  const auto& e1 = chain.inner_shape.ellipsoid();
  const auto& e2 = chain.outer_shape.ellipsoid();
  const double prop = e1.shape().norm() / e2.shape().norm();
  if ((e1.shape() - prop * e2.shape()).norm() > 1e-9 * e1.shape().norm())
    throw std::invalid_argument("bounding ellipsoids are not homothetic; no common ball frame");

  // Pre-map both bounds to balls; the inner becomes the unit ball, the outer
  // a ball of radius sqrt(prop)... fold that factor into R.
  norm.pre = e1.sqrt_shape();
  norm.pre_shift = Vector::Zero(n);
  const double outer_ball_radius = 1.0 / std::sqrt(prop);  // |pre(E2)| relative to the unit ball

  Body middle_pm = affine_image(chain.middle, norm.pre, Vector::Zero(n));
  norm.pm_r = chain.r;
  norm.pm_c = norm.pre * chain.c;
  norm.pm_R = chain.R * outer_ball_radius;
  norm.pm_d = norm.pre * chain.d;
  norm.swapped = true;

  ContainmentChain out;
  out.inner_shape = middle_pm;
  out.c = -norm.pm_d / norm.pm_R;
  out.r = 1.0 / norm.pm_R;
  out.middle = Body(Ellipsoid::unit_ball(n));
  out.outer_shape = middle_pm;
  out.d = -norm.pm_c / norm.pm_r;
  out.R = 1.0 / norm.pm_r;
  norm.normalized = out;
  return norm;
}

AderCertificate transport_certificate(const AderCertificate& cert, const Matrix& b, const Vector& t) {
  const int n = static_cast<int>(b.rows());
  const double det = b.determinant();
  if (std::abs(det) <= 1e-12 * std::pow(std::max(1.0, b.norm()), n))
    throw std::invalid_argument("transport map is singular");
  const Matrix binvT = b.inverse().transpose();
  AderCertificate out = cert;
  for (auto& p : out.inner) {
    p.point = b * p.point + t;
    p.normal = binvT * p.normal;
    p.ref = b * p.ref + t;
  }
  for (auto& p : out.outer) {
    p.point = b * p.point + t;
    p.normal = binvT * p.normal;
    p.ref = b * p.ref + t;
  }
  return out;
}

ContainmentChain transport_chain(const ContainmentChain& chain, const Matrix& b, const Vector& t) {
  ContainmentChain out;
  const int n = chain.dim();
  out.inner_shape = affine_image(chain.inner_shape, b, Vector::Zero(n));
  out.c = b * chain.c + t;
  out.r = chain.r;
  out.middle = affine_image(chain.middle, b, t);
  out.outer_shape = affine_image(chain.outer_shape, b, Vector::Zero(n));
  out.d = b * chain.d + t;
  out.R = chain.R;
  return out;
}

AderCertificate EuclideanNormalization::pull_back(const AderCertificate& cert) const {
  AderCertificate staged = cert;
  if (swapped) {
    // Normalized inner pairs came from the original outer side and vice
    // versa; undo the inversion in the pre-mapped frame.
    AderCertificate un;
    un.outer.reserve(staged.inner.size());
    un.outer_weights.resize(staged.inner.size());
    for (size_t i = 0; i < staged.inner.size(); ++i) {
      const Vector p = staged.inner[i].point;
      const double s = staged.inner[i].normal.dot(p) / p.squaredNorm();
      un.outer.push_back({pm_R * p + pm_d, p / pm_R, pm_d});
      un.outer_weights(static_cast<int>(i)) = staged.inner_weights(static_cast<int>(i)) * s;
    }
    un.inner.reserve(staged.outer.size());
    un.inner_weights.resize(staged.outer.size());
    for (size_t j = 0; j < staged.outer.size(); ++j) {
      const Vector q = staged.outer[j].point;
      const double s = staged.outer[j].normal.dot(q) / q.squaredNorm();
      un.inner.push_back({pm_r * q + pm_c, q / pm_r, pm_c});
      un.inner_weights(static_cast<int>(j)) = staged.outer_weights(static_cast<int>(j)) * s;
    }
    staged = un;
  }
  const Matrix binv = pre.inverse();
  return transport_certificate(staged, binv, -binv * pre_shift);
}

AderCertificate EuclideanNormalization::push_forward(const AderCertificate& cert) const {
  AderCertificate staged = transport_certificate(cert, pre, pre_shift);
  if (!swapped) return staged;
  AderCertificate sw;
  // Pre-mapped inner pairs become normalized outer pairs.
  const ContainmentChain& nc = *normalized;
  sw.outer.reserve(staged.inner.size());
  sw.outer_weights.resize(staged.inner.size());
  for (size_t j = 0; j < staged.inner.size(); ++j) {
    const Vector q = (staged.inner[j].point - pm_c) / pm_r;
    const double denom = q.dot(q - nc.d);
    sw.outer.push_back({q, q / denom, nc.d});
    // lambda (y-c) a^T = lambda q q^T after rescaling; match against the
    // normalized pair's (q - d_N)(q/denom)^T contribution.
    sw.outer_weights(static_cast<int>(j)) = staged.inner_weights(static_cast<int>(j)) * denom;
  }
  sw.inner.reserve(staged.outer.size());
  sw.inner_weights.resize(staged.outer.size());
  for (size_t i = 0; i < staged.outer.size(); ++i) {
    const Vector p = (staged.outer[i].point - pm_d) / pm_R;
    const double denom = p.dot(p - nc.c);
    sw.inner.push_back({p, p / denom, nc.c});
    sw.inner_weights(static_cast<int>(i)) = staged.outer_weights(static_cast<int>(i)) * denom;
  }
  return sw;
}

// ---------------------------------------------------------------------------
// Searches

EuclideanSearchResult euclidean_certificate_search(const std::vector<Vector>& p,
                                                   const std::vector<Vector>& q, double feas_tol) {
  if (p.empty() || q.empty()) throw std::invalid_argument("contact vector lists must be non-empty");
  const int n = static_cast<int>(p[0].size());
  const int sd = linalg::svec_dim(n);
  PointSet ps, qs;
  for (const auto& x : p) {
    const Vector u = unit(x);
    ps.points.push_back(linalg::flatten_symmetric_augmented(u * u.transpose(), u));
  }
  for (const auto& x : q) {
    const Vector u = unit(x);
    qs.points.push_back(linalg::flatten_symmetric_augmented(u * u.transpose(), u));
  }
  const Subspace u_sub = Subspace::coordinate(sd + n, sd);

  SeparateOptions opts;
  opts.feas_tol = feas_tol;
  auto witness = separate(ps, qs, u_sub, opts);

  EuclideanSearchResult out;
  if (std::holds_alternative<Intersecting>(witness)) {
    const auto& w = std::get<Intersecting>(witness);
    out.found = true;
    out.lam = w.combo_k;
    out.mu = w.combo_l;
    Matrix dec = Matrix::Zero(n, n);
    for (size_t i = 0; i < p.size(); ++i) {
      const Vector ui = unit(p[i]);
      dec += out.lam(static_cast<int>(i)) * ui * ui.transpose();
    }
    out.decomposition = dec;
    return out;
  }
  const auto& s = std::get<Separated>(witness);
  Matrix mat;
  Vector vec_v, vec_w;
  linalg::unflatten_symmetric_augmented(s.a + s.v, n, mat, vec_v);
  Matrix mat2;
  linalg::unflatten_symmetric_augmented(s.a + s.w, n, mat2, vec_w);
  out.found = false;
  out.a = -mat;
  out.v = -vec_v;
  out.w = -vec_w;
  out.margin = s.margin;
  return out;
}

namespace {

struct GeneralSearchResult {
  bool found = false;
  Vector lam, mu;
  Matrix a;
  Vector v, w;
  double margin = 0.0;
};

GeneralSearchResult general_certificate_search(const std::vector<ContactPair>& inner,
                                               const std::vector<ContactPair>& outer, const Vector& c,
                                               const Vector& d, double feas_tol) {
  const int n = static_cast<int>(c.size());
  PointSet ys, zs;
  for (const auto& pr : inner)
    ys.points.push_back(linalg::flatten_augmented((pr.point - c) * pr.normal.transpose(), pr.normal));
  for (const auto& pr : outer)
    zs.points.push_back(linalg::flatten_augmented((pr.point - d) * pr.normal.transpose(), pr.normal));
  const Subspace u_sub = Subspace::coordinate(n * n + n, n * n);

  SeparateOptions opts;
  opts.feas_tol = feas_tol;
  auto witness = separate(ys, zs, u_sub, opts);

  GeneralSearchResult out;
  if (std::holds_alternative<Intersecting>(witness)) {
    const auto& w = std::get<Intersecting>(witness);
    out.found = true;
    out.lam = w.combo_k;
    out.mu = w.combo_l;
    return out;
  }
  const auto& s = std::get<Separated>(witness);
  Matrix mat_v, mat_w;
  Vector vec_v, vec_w;
  linalg::unflatten_augmented(s.a + s.v, n, mat_v, vec_v);
  linalg::unflatten_augmented(s.a + s.w, n, mat_w, vec_w);
  out.found = false;
  out.a = -mat_v.transpose();
  out.v = mat_v.transpose() * c - vec_v;
  out.w = mat_w.transpose() * d - vec_w;
  out.margin = s.margin;
  return out;
}

AderCertificate build_from_weights(const std::vector<ContactPair>& inner, const Vector& lam,
                                   const std::vector<ContactPair>& outer, const Vector& mu,
                                   double weight_floor = 1e-11) {
  AderCertificate cert;
  for (size_t i = 0; i < inner.size(); ++i) {
    if (lam(static_cast<int>(i)) > weight_floor) cert.inner.push_back(inner[i]);
  }
  cert.inner_weights.resize(cert.inner.size());
  int k = 0;
  for (size_t i = 0; i < inner.size(); ++i)
    if (lam(static_cast<int>(i)) > weight_floor) cert.inner_weights(k++) = lam(static_cast<int>(i));
  for (size_t j = 0; j < outer.size(); ++j) {
    if (mu(static_cast<int>(j)) > weight_floor) cert.outer.push_back(outer[j]);
  }
  cert.outer_weights.resize(cert.outer.size());
  k = 0;
  for (size_t j = 0; j < outer.size(); ++j)
    if (mu(static_cast<int>(j)) > weight_floor) cert.outer_weights(k++) = mu(static_cast<int>(j));
  return cert;
}

}  // namespace

AderCertificate assemble_ball_certificate(const std::vector<Vector>& p, const Vector& lam,
                                          const std::vector<Vector>& q, const Vector& mu,
                                          const Vector& c, const Vector& d) {
  std::vector<ContactPair> inner, outer;
  Vector lw(p.size()), mw(q.size());
  for (size_t i = 0; i < p.size(); ++i) {
    const Vector y = unit(p[i]);
    inner.push_back({y, y / y.dot(y - c), c});
    lw(static_cast<int>(i)) = lam(static_cast<int>(i)) * y.dot(y - c);
  }
  for (size_t j = 0; j < q.size(); ++j) {
    const Vector z = unit(q[j]);
    outer.push_back({z, z / z.dot(z - d), d});
    mw(static_cast<int>(j)) = mu(static_cast<int>(j)) * z.dot(z - d);
  }
  return build_from_weights(inner, lw, outer, mw);
}

// ---------------------------------------------------------------------------
// find / verify / reduce

CertificateSearch find_certificate(const ContainmentChain& chain, double tol) {
  FindCertificateOptions opts;
  opts.contact_tol = tol;
  return find_certificate(chain, opts);
}

CertificateSearch find_certificate(const ContainmentChain& chain_in, const FindCertificateOptions& opts) {
  const ContainmentChain chain = canonicalized(chain_in);

  const bool euclidean = euclidean_applicable(chain);
  if (euclidean) {
    EuclideanNormalization norm = euclidean_specialize(chain);
    const ContainmentChain& nc = *norm.normalized;
    auto inner_pairs = contacts(nc.inner_body(), nc.middle, nc.c, opts.contact_tol);
    auto outer_pairs = contacts(nc.middle, nc.outer_body(), nc.d, opts.contact_tol);
    if (inner_pairs.empty() || outer_pairs.empty()) {
      const double rstar = max_inner_radius(nc.inner_shape, nc.c, nc.middle);
      const double big_rstar = min_outer_radius(nc.middle, nc.outer_shape, nc.d);
      const double slack =
          std::max(std::abs(rstar - nc.r) / nc.r, std::abs(big_rstar - nc.R) / nc.R);
      if (slack > opts.contact_tol) {
        Falsifier f;
        f.form = Falsifier::Form::RadialSlack;
        f.a = Matrix::Zero(chain.dim(), chain.dim());
        f.v = Vector::Zero(chain.dim());
        f.w = Vector::Zero(chain.dim());
        f.margin = slack;
        return f;
      }
      throw NoContacts("no eps-active contacts on one chain side despite extremal radii");
    }
    std::vector<Vector> p, q;
    for (const auto& pr : inner_pairs) p.push_back(pr.point);
    for (const auto& pr : outer_pairs) q.push_back(pr.point);
    auto res = euclidean_certificate_search(p, q, opts.feas_tol);
    if (res.found) {
      AderCertificate cert = assemble_ball_certificate(p, res.lam, q, res.mu, nc.c, nc.d);
      return norm.pull_back(cert);
    }
    Falsifier f;
    f.form = Falsifier::Form::EuclideanBall;
    f.a = res.a;
    f.v = res.v;
    f.w = res.w;
    f.margin = res.margin;
    return f;
  }

  auto inner_pairs = contacts(chain.inner_body(), chain.middle, chain.c, opts.contact_tol);
  auto outer_pairs = contacts(chain.middle, chain.outer_body(), chain.d, opts.contact_tol);
  if (inner_pairs.empty() || outer_pairs.empty()) {
    const double rstar = max_inner_radius(chain.inner_shape, chain.c, chain.middle);
    const double big_rstar = min_outer_radius(chain.middle, chain.outer_shape, chain.d);
    const double slack =
        std::max(std::abs(rstar - chain.r) / chain.r, std::abs(big_rstar - chain.R) / chain.R);
    if (slack > opts.contact_tol) {
      Falsifier f;
      f.form = Falsifier::Form::RadialSlack;
      f.a = Matrix::Zero(chain.dim(), chain.dim());
      f.v = Vector::Zero(chain.dim());
      f.w = Vector::Zero(chain.dim());
      f.margin = slack;
      return f;
    }
    throw NoContacts("no eps-active contacts on one chain side despite extremal radii");
  }
  auto res = general_certificate_search(inner_pairs, outer_pairs, chain.c, chain.d, opts.feas_tol);
  if (res.found) return build_from_weights(inner_pairs, res.lam, outer_pairs, res.mu);
  Falsifier f;
  f.form = Falsifier::Form::General;
  f.a = res.a;
  f.v = res.v;
  f.w = res.w;
  f.margin = res.margin;
  return f;
}

CertificateReport verify_certificate(const ContainmentChain& chain_in, const AderCertificate& cert,
                                     double tol) {
  const ContainmentChain chain = canonicalized(chain_in);
  CertificateReport rep;
  const double scale = std::max(1.0, chain.scale());
  auto add = [&](const std::string& name, double value, double threshold) {
    rep.checks.push_back({name, value, threshold, value <= threshold});
  };

  const Body inner_body = chain.inner_body();
  const Body outer_body = chain.outer_body();
  const Vector mid_base = interior_point(chain.middle);

  double worst_boundary = 0.0, worst_support = -1e300, worst_norm = 0.0, min_weight = 1e300;
  for (size_t i = 0; i < cert.inner.size(); ++i) {
    const auto& pr = cert.inner[i];
    worst_boundary = std::max(worst_boundary, std::abs(gauge(inner_body, pr.point, chain.c) - 1.0));
    worst_boundary = std::max(worst_boundary, std::abs(gauge(chain.middle, pr.point, mid_base) - 1.0));
    worst_support =
        std::max(worst_support, support(chain.middle, pr.normal) - pr.normal.dot(pr.point));
    worst_norm = std::max(worst_norm, std::abs(pr.normal.dot(pr.point - chain.c) - 1.0));
    min_weight = std::min(min_weight, cert.inner_weights(static_cast<int>(i)));
  }
  for (size_t j = 0; j < cert.outer.size(); ++j) {
    const auto& pr = cert.outer[j];
    worst_boundary = std::max(worst_boundary, std::abs(gauge(chain.middle, pr.point, mid_base) - 1.0));
    worst_boundary = std::max(worst_boundary, std::abs(gauge(outer_body, pr.point, chain.d) - 1.0));
    worst_support = std::max(worst_support, support(outer_body, pr.normal) - pr.normal.dot(pr.point));
    worst_norm = std::max(worst_norm, std::abs(pr.normal.dot(pr.point - chain.d) - 1.0));
    min_weight = std::min(min_weight, cert.outer_weights(static_cast<int>(j)));
  }

  const double mass = cert.inner_weights.sum() + cert.outer_weights.sum();
  add("boundary-membership", worst_boundary, 10 * tol);
  add("support-inequality", worst_support, tol * scale);
  add("normalization", worst_norm, 1e-7);
  rep.checks.push_back({"weight-positivity", min_weight, 0.0, min_weight > 0.0});

  const Matrix am = cert.inner_matrix();
  const Matrix bm = cert.outer_matrix();
  add("matrix-residual", (am - bm).norm(), tol * mass * scale);
  add("inner-normal-balance", cert.inner_normal_sum().norm(), tol * mass * scale);
  add("outer-normal-balance", cert.outer_normal_sum().norm(), tol * mass * scale);

  rep.inner_trace = cert.inner_trace();
  rep.outer_trace = cert.outer_trace();
  add("trace-identity", std::abs(rep.inner_trace - rep.outer_trace),
      tol * std::max(1.0, std::abs(rep.inner_trace)));

  rep.weighted_inner_points = Vector::Zero(chain.dim());
  for (size_t i = 0; i < cert.inner.size(); ++i)
    rep.weighted_inner_points += cert.inner_weights(static_cast<int>(i)) * cert.inner[i].point;
  rep.weighted_outer_points = Vector::Zero(chain.dim());
  for (size_t j = 0; j < cert.outer.size(); ++j)
    rep.weighted_outer_points += cert.outer_weights(static_cast<int>(j)) * cert.outer[j].point;

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  if (cert.inner.empty() || cert.outer.empty()) rep.pass = false;
  return rep;
}

int certificate_cardinality_bound(const ContainmentChain& chain) {
  const int n = chain.dim();
  return euclidean_applicable(chain) ? n * (n + 5) / 2 + 1 : (n + 1) * (n + 1);
}

AderCertificate reduce_certificate(const AderCertificate& cert, const ContainmentChain& chain_in) {
  const ContainmentChain chain = canonicalized(chain_in);
  const int n = chain.dim();
  const int cap = certificate_cardinality_bound(chain);

  if (euclidean_applicable(chain)) {
    EuclideanNormalization norm = euclidean_specialize(chain);
    AderCertificate nc = norm.push_forward(cert);
    const ContainmentChain& nch = *norm.normalized;
    // Sphere weights: lambda' = lambda * <y, y - c>^{-1}... the stored pairs
    // are normalized, so the pure-sphere weight is lambda / <y, y-c> times
    // <y,y-c>; reconstruct directly from the rank-one contributions.
    std::vector<Vector> p, q;
    Vector lamp(nc.inner.size()), muq(nc.outer.size());
    for (size_t i = 0; i < nc.inner.size(); ++i) {
      const Vector& y = nc.inner[i].point;
      p.push_back(unit(y));
      lamp(static_cast<int>(i)) = nc.inner_weights(static_cast<int>(i)) / y.dot(y - nch.c);
    }
    for (size_t j = 0; j < nc.outer.size(); ++j) {
      const Vector& z = nc.outer[j].point;
      q.push_back(unit(z));
      muq(static_cast<int>(j)) = nc.outer_weights(static_cast<int>(j)) / z.dot(z - nch.d);
    }
    const double mass_p = lamp.sum(), mass_q = muq.sum();
    auto res = euclidean_certificate_search(p, q, 1e-6);
    if (!res.found)
      throw ReductionInfeasible("certificate weights do not reproduce an intersecting system");
    Vector lam(nc.inner.size()), mu(nc.outer.size());
    for (size_t i = 0; i < nc.inner.size(); ++i) {
      const Vector& y = nc.inner[i].point;
      lam(static_cast<int>(i)) = res.lam(static_cast<int>(i)) * mass_p * y.dot(y - nch.c);
    }
    for (size_t j = 0; j < nc.outer.size(); ++j) {
      const Vector& z = nc.outer[j].point;
      mu(static_cast<int>(j)) = res.mu(static_cast<int>(j)) * mass_q * z.dot(z - nch.d);
    }
    AderCertificate reduced = build_from_weights(nc.inner, lam, nc.outer, mu);
    if (reduced.size() > cap)
      throw ReductionInfeasible("reduced support " + std::to_string(reduced.size()) +
                                " exceeds the Euclidean bound " + std::to_string(cap));
    return norm.pull_back(reduced);
  }

  PointSet ys, zs;
  for (const auto& pr : cert.inner)
    ys.points.push_back(linalg::flatten_augmented((pr.point - chain.c) * pr.normal.transpose(), pr.normal));
  for (const auto& pr : cert.outer)
    zs.points.push_back(linalg::flatten_augmented((pr.point - chain.d) * pr.normal.transpose(), pr.normal));
  const Subspace u_sub = Subspace::coordinate(n * n + n, n * n);
  SeparateOptions sopts;
  sopts.feas_tol = 1e-6;
  auto witness = separate(ys, zs, u_sub, sopts);
  if (!std::holds_alternative<Intersecting>(witness))
    throw ReductionInfeasible("certificate weights do not reproduce an intersecting system");
  const auto& w = std::get<Intersecting>(witness);
  const double mass_in = cert.inner_weights.sum(), mass_out = cert.outer_weights.sum();
  AderCertificate reduced =
      build_from_weights(cert.inner, w.combo_k * mass_in, cert.outer, w.combo_l * mass_out);
  if (reduced.size() > cap)
    throw ReductionInfeasible("reduced support " + std::to_string(reduced.size()) +
                              " exceeds the bound " + std::to_string(cap));
  return reduced;
}

// ---------------------------------------------------------------------------
// Homothety optimality

HomothetyReport homothety_optimality_check(const Body& k, const Body& c, double big_r, const Vector& v,
                                           double tol) {
  const int n = k.dim();
  Body outer = affine_image(c, big_r * Matrix::Identity(n, n), v);
  auto rep = inclusion_slack(k, outer);
  const double scale = std::max(1.0, outer.scale());
  if (rep.slack > tol * scale) throw PreconditionFailure("K is not contained in R*C + v");

  HomothetyReport out;
  if (outer.is_polytope()) {
    for (const auto& f : outer.polytope().facets())
      if (support(k, f.normal) >= f.offset - tol * scale) out.normals.push_back(f.normal);
  } else {
    const auto& e = outer.ellipsoid();
    if (k.is_polytope()) {
      for (const auto& vert : k.polytope().vertices())
        if (gauge(outer, vert, e.center()) >= 1.0 - tol)
          out.normals.push_back(unit(e.shape() * (vert - e.center())));
    } else {
      auto pairs = contacts(k, outer, e.center(), std::max(tol, 1e-9));
      for (const auto& pr : pairs) out.normals.push_back(unit(pr.normal));
    }
  }
  if (out.normals.empty()) {
    out.pass = false;
    return out;
  }

  // 0 in conv{normals}?
  const int m = static_cast<int>(out.normals.size());
  lp::Problem prob(m);
  for (int r = 0; r < n; ++r) {
    Vector row(m);
    for (int i = 0; i < m; ++i) row(i) = out.normals[i](r);
    prob.add_row(row, lp::Rel::Eq, 0.0);
  }
  prob.add_row(Vector::Ones(m), lp::Rel::Eq, 1.0);
  auto res = prob.solve_feasibility();
  out.pass = res.infeasibility <= 1e-8;
  return out;
}

}  // namespace ader
