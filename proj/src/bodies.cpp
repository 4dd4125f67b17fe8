#include "ader/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ader/errors.hpp"
#include "ader/lp.hpp"

namespace ader {

namespace {

constexpr int kMaxDim = 6;
constexpr double kRelTol = 1e-9;

bool lex_less(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-15) return true;
    if (a(i) > b(i) + 1e-15) return false;
  }
  return false;
}

double max_norm(const std::vector<Vector>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.norm());
  return s;
}

std::vector<Vector> dedupe_points(const std::vector<Vector>& pts, double tol) {
  std::vector<Vector> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out)
      if ((p - q).norm() <= tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(p);
  }
  return out;
}

int affine_rank(const std::vector<Vector>& pts, double tol) {
  if (pts.empty()) return -1;
  const int n = static_cast<int>(pts[0].size());
  Vector mean = Vector::Zero(n);
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Matrix m(n, pts.size());
  for (size_t i = 0; i < pts.size(); ++i) m.col(i) = pts[i] - mean;
  Eigen::JacobiSVD<Matrix> svd(m);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return rank;
}

// True iff target lies in the convex hull of pts (LP feasibility).
bool in_hull(const Vector& target, const std::vector<Vector>& pts) {
  const int n = static_cast<int>(target.size());
  const int m = static_cast<int>(pts.size());
  if (m == 0) return false;
  lp::Problem prob(m);
  for (int i = 0; i < n; ++i) {
    Vector row(m);
    for (int j = 0; j < m; ++j) row(j) = pts[j](i);
    prob.add_row(row, lp::Rel::Eq, target(i));
  }
  prob.add_row(Vector::Ones(m), lp::Rel::Eq, 1.0);
  auto res = prob.solve_feasibility();
  const double scale = std::max(1.0, target.norm());
  return res.infeasibility <= 1e-9 * scale;
}

// Unit normal of the hyperplane through n affinely independent points, or
// nullopt when they are degenerate.
std::optional<Vector> hyperplane_normal(const std::vector<Vector>& pts, const std::vector<int>& idx,
                                        double tol) {
  const int n = static_cast<int>(pts[0].size());
  Matrix diffs(static_cast<int>(idx.size()) - 1, n);
  for (size_t k = 1; k < idx.size(); ++k) diffs.row(static_cast<int>(k) - 1) = (pts[idx[k]] - pts[idx[0]]).transpose();
  Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (n >= 2 && sv.size() >= n - 1 && sv(n - 2) <= tol) return std::nullopt;
  Vector normal = svd.matrixV().col(n - 1);
  if (n >= 2 && std::abs(diffs.row(0).dot(normal)) > tol) return std::nullopt;
  return normal;
}

void enumerate_subsets(int total, int take, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(take);
  for (int i = 0; i < take; ++i) idx[i] = i;
  if (take > total) return;
  for (;;) {
    fn(idx);
    int i = take - 1;
    while (i >= 0 && idx[i] == total - take + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Polytope

Vector Polytope::centroid() const {
  Vector c = Vector::Zero(n_);
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

bool Polytope::contains(const Vector& x, double tol) const {
  for (const auto& f : facets_)
    if (f.normal.dot(x) > f.offset + tol) return false;
  return true;
}

void Polytope::finish(std::vector<Vector> verts) {
  const int n = n_;
  const double tol = kRelTol * std::max(1.0, scale_);

  // Keep only hull vertices.
  std::vector<Vector> hull;
  for (size_t i = 0; i < verts.size(); ++i) {
    std::vector<Vector> others;
    for (size_t j = 0; j < verts.size(); ++j)
      if (j != i) others.push_back(verts[j]);
    if (!in_hull(verts[i], others)) hull.push_back(verts[i]);
  }
  if (affine_rank(hull, tol) < n)
    throw std::invalid_argument("polytope is not full-dimensional");

  std::sort(hull.begin(), hull.end(), lex_less);
  vertices_ = hull;

  if (n == 1) {
    double lo = vertices_.front()(0), hi = vertices_.back()(0);
    facets_ = {{Vector::Constant(1, -1.0), -lo}, {Vector::Constant(1, 1.0), hi}};
    return;
  }

  // Facets: supporting hyperplanes spanned by n affinely independent vertices.
  std::vector<Facet> found;
  const int v = static_cast<int>(vertices_.size());
  enumerate_subsets(v, n, [&](const std::vector<int>& idx) {
    auto normal = hyperplane_normal(vertices_, idx, tol);
    if (!normal) return;
    double b = normal->dot(vertices_[idx[0]]);
    double mx = -1e300, mn = 1e300;
    for (const auto& p : vertices_) {
      const double d = normal->dot(p);
      mx = std::max(mx, d);
      mn = std::min(mn, d);
    }
    Vector a = *normal;
    if (mx <= b + tol) {
      // keep as-is
    } else if (mn >= b - tol) {
      a = -a;
      b = -b;
    } else {
      return;  // cuts through the hull: not a facet
    }
    for (const auto& f : found)
      if ((f.normal - a).norm() + std::abs(f.offset - b) <= 1e-7 * std::max(1.0, scale_)) return;
    found.push_back({a, b});
  });

  std::sort(found.begin(), found.end(), [](const Facet& x, const Facet& y) {
    if (lex_less(x.normal, y.normal)) return true;
    if (lex_less(y.normal, x.normal)) return false;
    return x.offset < y.offset;
  });
  facets_ = found;

  if (facets_.size() < static_cast<size_t>(n + 1))
    throw std::invalid_argument("polytope facet enumeration failed (degenerate input?)");
}

Polytope Polytope::from_vertices(const std::vector<Vector>& points) {
  if (points.empty()) throw std::invalid_argument("polytope needs at least one vertex");
  const int n = static_cast<int>(points[0].size());
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("polytope dimension must be between 1 and 6 (dual description is desk-scale)");
  for (const auto& p : points)
    if (p.size() != n) throw std::invalid_argument("inconsistent vertex dimensions");

  Polytope p;
  p.n_ = n;
  p.scale_ = std::max(1e-12, max_norm(points));
  auto unique = dedupe_points(points, kRelTol * p.scale_);
  if (affine_rank(unique, kRelTol * p.scale_) < n)
    throw std::invalid_argument("polytope is not full-dimensional");
  p.finish(std::move(unique));
  return p;
}

Polytope Polytope::from_reps(std::vector<Vector> points, std::vector<Facet> halfspaces) {
  Polytope p;
  p.n_ = static_cast<int>(points.at(0).size());
  p.scale_ = std::max(1e-12, max_norm(points));
  std::sort(points.begin(), points.end(), lex_less);
  std::sort(halfspaces.begin(), halfspaces.end(), [](const Facet& x, const Facet& y) {
    if (lex_less(x.normal, y.normal)) return true;
    if (lex_less(y.normal, x.normal)) return false;
    return x.offset < y.offset;
  });
  const double tol = 1e-7 * std::max(1.0, p.scale_);
  for (const auto& v : points)
    for (const auto& f : halfspaces)
      if (f.normal.dot(v) > f.offset + tol)
        throw std::invalid_argument("inconsistent vertex/facet pair passed to from_reps");
  p.vertices_ = std::move(points);
  p.facets_ = std::move(halfspaces);
  return p;
}

Polytope Polytope::from_facets(const std::vector<Facet>& halfspaces) {
  if (halfspaces.empty()) throw std::invalid_argument("polytope needs facets");
  const int n = static_cast<int>(halfspaces[0].normal.size());
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("polytope dimension must be between 1 and 6 (dual description is desk-scale)");

  std::vector<Facet> fs;
  for (const auto& f : halfspaces) {
    const double nn = f.normal.norm();
    if (nn <= 1e-14) throw std::invalid_argument("zero facet normal");
    Facet g{f.normal / nn, f.offset / nn};
    bool dup = false;
    for (const auto& h : fs)
      if ((h.normal - g.normal).norm() + std::abs(h.offset - g.offset) <= 1e-12) dup = true;
    if (!dup) fs.push_back(g);
  }

  // Boundedness: the recession cone {u : <a_i, u> <= 0} must be {0}.
  for (int j = 0; j < n; ++j) {
    for (double sgn : {1.0, -1.0}) {
      lp::Problem prob(n);
      for (int k = 0; k < n; ++k) prob.set_free(k);
      Vector c = Vector::Zero(n);
      c(j) = -sgn;  // maximize sgn * u_j
      prob.set_objective(c);
      for (const auto& f : fs) prob.add_row(f.normal, lp::Rel::Le, 0.0);
      for (int k = 0; k < n; ++k) {
        Vector e = Vector::Zero(n);
        e(k) = 1.0;
        prob.add_row(e, lp::Rel::Le, 1.0);
        prob.add_row(e, lp::Rel::Ge, -1.0);
      }
      auto res = prob.solve();
      if (res.status == lp::Status::Optimal && -res.objective > 1e-7)
        throw std::invalid_argument("halfspace intersection is unbounded");
    }
  }

  double bscale = 1.0;
  for (const auto& f : fs) bscale = std::max(bscale, std::abs(f.offset));

  // Vertex candidates: intersections of n facets satisfying all constraints.
  std::vector<Vector> cand;
  const int m = static_cast<int>(fs.size());
  enumerate_subsets(m, n, [&](const std::vector<int>& idx) {
    Matrix a(n, n);
    Vector b(n);
    for (int k = 0; k < n; ++k) {
      a.row(k) = fs[idx[k]].normal.transpose();
      b(k) = fs[idx[k]].offset;
    }
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(1e-9);
    if (!lu.isInvertible()) return;
    Vector x = lu.solve(b);
    if ((a * x - b).norm() > 1e-7 * bscale) return;
    const double tol = 1e-7 * std::max(bscale, x.norm());
    for (const auto& f : fs)
      if (f.normal.dot(x) > f.offset + tol) return;
    cand.push_back(x);
  });

  Polytope p;
  p.n_ = n;
  p.scale_ = std::max(1e-12, max_norm(cand));
  auto unique = dedupe_points(cand, kRelTol * p.scale_ * 10);
  if (affine_rank(unique, kRelTol * p.scale_) < n)
    throw std::invalid_argument("polytope is not full-dimensional");
  p.finish(std::move(unique));
  return p;
}

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(Vector center, Matrix shape) : center_(std::move(center)), shape_(std::move(shape)) {
  const int n = static_cast<int>(center_.size());
  if (shape_.rows() != n || shape_.cols() != n) throw std::invalid_argument("shape matrix size mismatch");
  const double rel = (shape_ - shape_.transpose()).norm();
  if (rel > 1e-12 * std::max(1.0, shape_.norm()))
    throw std::invalid_argument("shape matrix is not symmetric");
  shape_ = 0.5 * (shape_ + shape_.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> es(shape_);
  const Vector evals = es.eigenvalues();
  if (evals(0) <= 0.0) throw std::invalid_argument("shape matrix is not positive definite");
  axes_ = es.eigenvectors();
  half_lengths_ = evals.cwiseSqrt().cwiseInverse();

  Matrix rebuilt = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    rebuilt += axes_.col(i) * axes_.col(i).transpose() / (half_lengths_(i) * half_lengths_(i));
  if ((rebuilt - shape_).norm() > 1e-10 * std::max(1.0, shape_.norm()))
    throw std::invalid_argument("spectral decomposition failed to reconstruct the shape");
}

Ellipsoid Ellipsoid::unit_ball(int n) { return Ellipsoid(Vector::Zero(n), Matrix::Identity(n, n)); }

Ellipsoid Ellipsoid::from_axes(const Vector& center, const Matrix& axes, const Vector& half_lengths) {
  const int n = static_cast<int>(center.size());
  Matrix q = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (half_lengths(i) <= 0.0) throw std::invalid_argument("half-lengths must be positive");
    q += axes.col(i) * axes.col(i).transpose() / (half_lengths(i) * half_lengths(i));
  }
  return Ellipsoid(center, q);
}

Matrix Ellipsoid::inverse_shape() const {
  const int n = dim();
  Matrix q = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) q += half_lengths_(i) * half_lengths_(i) * axes_.col(i) * axes_.col(i).transpose();
  return q;
}

Matrix Ellipsoid::sqrt_shape() const {
  const int n = dim();
  Matrix q = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) q += axes_.col(i) * axes_.col(i).transpose() / half_lengths_(i);
  return q;
}

Matrix Ellipsoid::inv_sqrt_shape() const {
  const int n = dim();
  Matrix q = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) q += half_lengths_(i) * axes_.col(i) * axes_.col(i).transpose();
  return q;
}

double Ellipsoid::scale() const { return half_lengths_.maxCoeff() + center_.norm(); }

bool Ellipsoid::is_ball(double tol) const {
  return (shape_ - Matrix::Identity(dim(), dim())).norm() <= tol * std::max(1.0, shape_.norm());
}

// ---------------------------------------------------------------------------
// Body

int Body::dim() const { return is_polytope() ? polytope().dim() : ellipsoid().dim(); }

double Body::scale() const { return is_polytope() ? polytope().scale() : ellipsoid().scale(); }

Vector interior_point(const Body& body) {
  return body.is_polytope() ? body.polytope().centroid() : body.ellipsoid().center();
}

// ---------------------------------------------------------------------------
// Queries

double support(const Body& body, const Vector& direction) {
  if (direction.norm() <= 1e-14) throw std::invalid_argument("support direction must be nonzero");
  if (body.is_polytope()) {
    double best = -1e300;
    for (const auto& v : body.polytope().vertices()) best = std::max(best, v.dot(direction));
    return best;
  }
  const auto& e = body.ellipsoid();
  return e.center().dot(direction) + std::sqrt(direction.dot(e.inverse_shape() * direction));
}

double gauge(const Body& body, const Vector& point, const Vector& base) {
  if (body.is_polytope()) {
    const auto& p = body.polytope();
    const double eps = 1e-12 * std::max(1.0, p.scale());
    double g = 0.0;
    for (const auto& f : p.facets()) {
      const double denom = f.offset - f.normal.dot(base);
      if (denom <= eps) throw std::invalid_argument("gauge base point is not interior");
      g = std::max(g, f.normal.dot(point - base) / denom);
    }
    return g;
  }
  const auto& e = body.ellipsoid();
  const Vector u = point - base;
  const Vector ec = base - e.center();
  const double cterm = ec.dot(e.shape() * ec) - 1.0;
  if (cterm >= -1e-12) throw std::invalid_argument("gauge base point is not interior");
  const double aterm = u.dot(e.shape() * u);
  if (aterm <= 0.0) return 0.0;
  const double bterm = 2.0 * ec.dot(e.shape() * u);
  // c t^2 + b t + a <= 0 for t >= gauge; gauge is the larger root.
  const double disc = bterm * bterm - 4.0 * cterm * aterm;
  const double sq = std::sqrt(std::max(0.0, disc));
  const double r1 = (-bterm + sq) / (2.0 * cterm);
  const double r2 = (-bterm - sq) / (2.0 * cterm);
  return std::max(r1, r2);
}

InclusionReport inclusion_slack(const Body& inner, const Body& outer) {
  if (inner.is_polytope() && outer.is_polytope()) {
    double worst = -1e300;
    Vector witness;
    for (const auto& v : inner.polytope().vertices())
      for (const auto& f : outer.polytope().facets()) {
        const double s = f.normal.dot(v) - f.offset;
        if (s > worst) {
          worst = s;
          witness = v;
        }
      }
    return {worst, witness};
  }
  if (inner.is_polytope()) {
    const auto& e = outer.ellipsoid();
    double worst = -1e300;
    Vector witness;
    for (const auto& v : inner.polytope().vertices()) {
      const double s = (gauge(outer, v, e.center()) - 1.0) * e.scale();
      if (s > worst) {
        worst = s;
        witness = v;
      }
    }
    return {worst, witness};
  }
  if (outer.is_polytope()) {
    const auto& e = inner.ellipsoid();
    double worst = -1e300;
    Vector witness;
    for (const auto& f : outer.polytope().facets()) {
      const double s = support(inner, f.normal) - f.offset;
      if (s > worst) {
        worst = s;
        const Matrix qinv = e.inverse_shape();
        witness = e.center() + qinv * f.normal / std::sqrt(f.normal.dot(qinv * f.normal));
      }
    }
    return {worst, witness};
  }
  // Ellipsoid in ellipsoid: maximize the outer gauge^2 over the inner boundary.
  const auto& ei = inner.ellipsoid();
  const auto& eo = outer.ellipsoid();
  const Matrix a = ei.inv_sqrt_shape();
  const Vector ec = ei.center() - eo.center();
  const Matrix m = a * eo.shape() * a;
  const Vector g = a * (eo.shape() * ec);
  const double s0 = ec.dot(eo.shape() * ec);
  auto mx = linalg::max_quadratic_on_sphere(m, g, s0);
  const double val = std::sqrt(std::max(0.0, mx.value));
  return {(val - 1.0) * eo.scale(), ei.center() + a * mx.arg};
}

namespace {

void push_pair(std::vector<ContactPair>& out, const Vector& y, Vector a, const Vector& ref, double scale) {
  const double s = a.dot(y - ref);
  if (s <= 1e-12 * std::max(1.0, scale)) return;
  a /= s;
  for (const auto& p : out)
    if ((p.point - y).norm() + (p.normal - a).norm() <= 1e-9 * std::max(1.0, scale)) return;
  out.push_back({y, a, ref});
}

}  // namespace

std::vector<ContactPair> contacts(const Body& inner, const Body& outer, const Vector& ref, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("contact tolerance must be positive");
  const double scale = std::max(inner.scale(), outer.scale());
  auto rep = inclusion_slack(inner, outer);
  if (rep.slack > tol * std::max(1.0, scale)) {
    throw PreconditionFailure("containment violated at point [" +
                              [&] {
                                std::string s;
                                for (int i = 0; i < rep.witness.size(); ++i)
                                  s += (i ? ", " : "") + std::to_string(rep.witness(i));
                                return s;
                              }() +
                              "]");
  }

  const Vector base_in = interior_point(inner);
  const Vector base_out = interior_point(outer);
  const double band = tol;
  std::vector<ContactPair> out;

  auto on_band = [&](const Body& b, const Vector& base, const Vector& x) {
    const double g = gauge(b, x, base);
    return g >= 1.0 - band && g <= 1.0 + band;
  };

  if (outer.is_polytope()) {
    const auto& po = outer.polytope();
    for (const auto& f : po.facets()) {
      const double h = support(inner, f.normal);
      if (h < f.offset - band * std::max(1.0, scale)) continue;  // facet inactive
      if (inner.is_polytope()) {
        for (const auto& v : inner.polytope().vertices())
          if (f.normal.dot(v) >= f.offset - band * std::max(1.0, scale)) push_pair(out, v, f.normal, ref, scale);
      } else {
        const auto& e = inner.ellipsoid();
        const Matrix qinv = e.inverse_shape();
        const Vector y = e.center() + qinv * f.normal / std::sqrt(f.normal.dot(qinv * f.normal));
        push_pair(out, y, f.normal, ref, scale);
      }
    }
    if (inner.is_polytope()) {
      // Outer vertices sitting on the inner boundary are contacts too.
      for (const auto& z : po.vertices()) {
        if (!on_band(inner, base_in, z)) continue;
        for (const auto& f : po.facets())
          if (std::abs(f.normal.dot(z) - f.offset) <= band * std::max(1.0, scale))
            push_pair(out, z, f.normal, ref, scale);
      }
    }
  } else {
    const auto& eo = outer.ellipsoid();
    if (inner.is_polytope()) {
      for (const auto& v : inner.polytope().vertices())
        if (on_band(outer, eo.center(), v)) push_pair(out, v, eo.shape() * (v - eo.center()), ref, scale);
    } else {
      const auto& ei = inner.ellipsoid();
      std::vector<Vector> cand;
      const bool same = (ei.shape() - eo.shape()).norm() <= 1e-9 * std::max(1.0, eo.shape().norm()) &&
                        (ei.center() - eo.center()).norm() <= 1e-9 * std::max(1.0, scale);
      if (same) {
        for (int i = 0; i < ei.dim(); ++i) {
          cand.push_back(ei.center() + ei.half_lengths()(i) * ei.axes().col(i));
          cand.push_back(ei.center() - ei.half_lengths()(i) * ei.axes().col(i));
        }
      } else {
        const Matrix a = ei.inv_sqrt_shape();
        const Vector ec = ei.center() - eo.center();
        auto mx = linalg::max_quadratic_on_sphere(a * eo.shape() * a, a * (eo.shape() * ec),
                                                  ec.dot(eo.shape() * ec));
        cand.push_back(ei.center() + a * mx.arg);
        for (int i = 0; i < ei.dim(); ++i) {
          cand.push_back(ei.center() + ei.half_lengths()(i) * ei.axes().col(i));
          cand.push_back(ei.center() - ei.half_lengths()(i) * ei.axes().col(i));
        }
      }
      for (const auto& y : cand)
        if (on_band(inner, base_in, y) && on_band(outer, eo.center(), y))
          push_pair(out, y, eo.shape() * (y - eo.center()), ref, scale);
    }
  }

  // Spec guarantee: every returned normal supports the outer body at its point.
  std::vector<ContactPair> kept;
  for (const auto& p : out) {
    const double h = support(outer, p.normal);
    if (h <= p.normal.dot(p.point) + tol * p.normal.norm() * std::max(1.0, scale)) kept.push_back(p);
  }
  return kept;
}

Body affine_image(const Body& body, const Matrix& b, const Vector& t) {
  const int n = body.dim();
  const double det = b.determinant();
  const double op = b.norm() / std::sqrt(static_cast<double>(n));
  if (std::abs(det) <= 1e-12 * std::pow(std::max(1.0, op), n))
    throw std::invalid_argument("affine map is singular");

  if (body.is_polytope()) {
    const auto& p = body.polytope();
    std::vector<Vector> verts;
    verts.reserve(p.vertices().size());
    for (const auto& v : p.vertices()) verts.push_back(b * v + t);
    // Mapping the facets directly avoids re-running the dual description;
    // affine maps preserve faces.
    const Matrix binvT = b.inverse().transpose();
    std::vector<Polytope::Facet> fac;
    for (const auto& f : p.facets()) {
      Vector a = binvT * f.normal;
      const double nn = a.norm();
      fac.push_back({a / nn, (f.offset + a.dot(t)) / nn});
    }
    return Body(Polytope::from_reps(std::move(verts), std::move(fac)));
  }
  const auto& e = body.ellipsoid();
  const Matrix binv = b.inverse();
  return Body(Ellipsoid(b * e.center() + t, binv.transpose() * e.shape() * binv));
}

Polytope minkowski_combine(const Body& a, const Body& b, double wa, double wb, int density) {
  if (wa < 0 || wb < 0) throw std::invalid_argument("weights must be nonnegative");
  const int n = a.dim();
  if (b.dim() != n) throw std::invalid_argument("dimension mismatch");
  if (a.is_polytope() && b.is_polytope()) {
    std::vector<Vector> pts;
    for (const auto& u : a.polytope().vertices())
      for (const auto& v : b.polytope().vertices()) pts.push_back(wa * u + wb * v);
    return Polytope::from_vertices(pts);
  }
  auto dirs = linalg::sphere_directions(n, density);
  std::vector<Polytope::Facet> fac;
  for (const auto& u : dirs) fac.push_back({u, wa * support(a, u) + wb * support(b, u)});
  return Polytope::from_facets(fac);
}

Polytope reflect(const Polytope& p) {
  std::vector<Vector> pts;
  for (const auto& v : p.vertices()) pts.push_back(-v);
  return Polytope::from_vertices(pts);
}

}  // namespace ader
