#include "ader/mean_ellipsoids.hpp"

#include <cmath>
#include <stdexcept>

namespace ader {

namespace {

constexpr double kClusterTol = 1e-8;  // axis joins the contact cluster at this relative gap

void check_lambda(double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in [0, 1]");
}

// Orthonormal columns spanning the axes whose ratio is within kClusterTol of 1.
Matrix axis_cluster(const Matrix& axes, const Vector& ratios) {
  std::vector<int> idx;
  for (int i = 0; i < ratios.size(); ++i)
    if (std::abs(ratios(i) - 1.0) <= kClusterTol * std::max(1.0, std::abs(ratios(i)))) idx.push_back(i);
  Matrix out(axes.rows(), static_cast<int>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out.col(static_cast<int>(k)) = axes.col(idx[k]);
  return out;
}

}  // namespace

void MeanPath::validate() const {
  const int n = dim();
  if (axes.rows() != n || axes.cols() != n) throw std::invalid_argument("axes must be n x n");
  if ((axes.transpose() * axes - Matrix::Identity(n, n)).norm() > 1e-12 * n)
    throw std::invalid_argument("axes must be orthonormal");
  for (int i = 0; i < n; ++i)
    if (ratios(i) <= 0.0) throw std::invalid_argument("ratios must be positive");
  if (r0 <= 0 || r1 <= 0 || big_r0 <= 0 || big_r1 <= 0)
    throw std::invalid_argument("radii must be positive");
  if (c0.size() != n || c1.size() != n || d0.size() != n || d1.size() != n)
    throw std::invalid_argument("center dimensions mismatch");
}

TranslationWindow translation_window(const Vector& betas, double lambda) {
  check_lambda(lambda);
  TranslationWindow w;
  const int n = static_cast<int>(betas.size());
  w.lo.resize(n);
  w.hi.resize(n);
  for (int i = 0; i < n; ++i) {
    const double b = betas(i);
    if (b <= 0.0) throw std::invalid_argument("window ratio must be positive");
    const double lo = 1.0 - (1.0 - lambda) * std::pow(b, lambda);
    const double hi = lambda * std::pow(b, lambda - 1.0);
    w.lo(i) = std::min(1.0, std::max(0.0, lo));
    w.hi(i) = std::min(1.0, std::max(0.0, hi));
    // The two bounds always admit a gap: lo <= hi is the power-mean
    // inequality, so a violation here is a numerics bug.
    if (w.lo(i) > w.hi(i) + 1e-12) throw std::logic_error("empty translation window");
  }
  return w;
}

bool TranslationWindow::admits(const Vector& mu, double tol) const {
  if (mu.size() != lo.size()) return false;
  for (int i = 0; i < mu.size(); ++i)
    if (mu(i) < lo(i) - tol || mu(i) > hi(i) + tol) return false;
  return true;
}

Ellipsoid power_interpolate(const Ellipsoid& e, double lambda) {
  check_lambda(lambda);
  if (e.center().norm() > 1e-12 * std::max(1.0, e.scale()))
    throw std::invalid_argument("power interpolation expects an origin-centered ellipsoid");
  Vector hl = e.half_lengths();
  for (int i = 0; i < hl.size(); ++i) hl(i) = std::pow(hl(i), lambda);
  return Ellipsoid::from_axes(Vector::Zero(e.dim()), e.axes(), hl);
}

MeanResult inner_mean(const MeanPath& path, double lambda) {
  check_lambda(lambda);
  path.validate();
  const int n = path.dim();

  const double r_lambda = std::pow(path.r0, 1.0 - lambda) * std::pow(path.r1, lambda);
  Vector hl(n);
  for (int i = 0; i < n; ++i) hl(i) = r_lambda * std::pow(path.ratios(i), lambda);
  const Vector c_lambda = (1.0 - lambda) * path.c0 + lambda * path.c1;

  MeanResult res{Ellipsoid::from_axes(c_lambda, path.axes, hl), Matrix(n, 0), false};
  // Contacts with the hull of the endpoints live where r1*alpha matches r0,
  // orthogonally to the center displacement.
  Vector scaled = path.ratios * (path.r1 / path.r0);
  const Matrix cluster = axis_cluster(path.axes, scaled);
  res.contact_subspace = linalg::intersect_with_orthogonal(cluster, path.c0 - path.c1);
  return res;
}

ScalarInequality scalar_inequality_check(double alpha, double lambda, double mu, double x, double y) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  check_lambda(lambda);
  Vector beta(1);
  beta << alpha;
  const TranslationWindow w = translation_window(beta, lambda);
  if (mu < w.lo(0) - 1e-12 || mu > w.hi(0) + 1e-12)
    throw std::invalid_argument("mu outside the admissible translation window");

  ScalarInequality out;
  const double num = (1.0 - mu) * x + mu * y;
  out.lhs = num * num / std::pow(alpha, 2.0 * lambda);
  out.rhs = (1.0 - lambda) * x * x + lambda * y * y / (alpha * alpha);
  const double teq = 1e-14;
  out.equality_case = (lambda <= teq) || (lambda >= 1.0 - teq) ||
                      (std::abs(alpha - 1.0) <= teq && std::abs(x - y) <= teq * std::max(1.0, std::abs(x))) ||
                      (std::abs(x) <= teq && std::abs(y) <= teq);
  return out;
}

MeanResult outer_mean(const MeanPath& path, double lambda, const std::optional<Vector>& mu_in) {
  check_lambda(lambda);
  path.validate();
  const int n = path.dim();

  Vector betas(n);
  for (int i = 0; i < n; ++i) betas(i) = (path.big_r1 / path.big_r0) * path.ratios(i);
  const TranslationWindow w = translation_window(betas, lambda);
  Vector mu = mu_in.value_or(w.midpoint());
  if (mu.size() != n) throw std::invalid_argument("mu must have one entry per axis");
  for (int i = 0; i < n; ++i)
    if (mu(i) < w.lo(i) - 1e-12 || mu(i) > w.hi(i) + 1e-12)
      throw std::invalid_argument("mu outside its translation window at axis " + std::to_string(i));

  const double R_lambda = std::pow(path.big_r0, 1.0 - lambda) * std::pow(path.big_r1, lambda);
  Vector hl(n);
  for (int i = 0; i < n; ++i) hl(i) = R_lambda * std::pow(path.ratios(i), lambda);

  Vector d_lambda = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    const Vector v = path.axes.col(i);
    d_lambda += ((1.0 - mu(i)) * path.d0.dot(v) + mu(i) * path.d1.dot(v)) * v;
  }

  MeanResult res{Ellipsoid::from_axes(d_lambda, path.axes, hl), Matrix(n, 0), false};
  res.contact_subspace = axis_cluster(path.axes, betas);
  res.center_equality_required = (lambda > 0.0 && lambda < 1.0);
  return res;
}

SimultaneousMean simultaneous_mean(const MeanPath& path, double lambda, const std::optional<Vector>& mu) {
  SimultaneousMean out{inner_mean(path, lambda), outer_mean(path, lambda, mu), 0.0, 0.0, 0.0};
  out.r_lambda = std::pow(path.r0, 1.0 - lambda) * std::pow(path.r1, lambda);
  out.big_r_lambda = std::pow(path.big_r0, 1.0 - lambda) * std::pow(path.big_r1, lambda);
  out.log_ratio = (1.0 - lambda) * std::log(path.big_r0 / path.r0) + lambda * std::log(path.big_r1 / path.r1);
  return out;
}

}  // namespace ader
