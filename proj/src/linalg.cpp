#include "ader/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace ader::linalg {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

int svec_dim(int n) { return n * (n + 1) / 2; }

Vector svec(const Matrix& s) {
  const int n = static_cast<int>(s.rows());
  Vector v(svec_dim(n));
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) v(k++) = (i == j) ? s(i, j) : kSqrt2 * s(i, j);
  return v;
}

Matrix smat(const Vector& v) {
  const int m = static_cast<int>(v.size());
  const int n = static_cast<int>(std::round((std::sqrt(8.0 * m + 1.0) - 1.0) / 2.0));
  Matrix s(n, n);
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      const double x = (i == j) ? v(k) : v(k) / kSqrt2;
      s(i, j) = x;
      s(j, i) = x;
      ++k;
    }
  return s;
}

Vector flatten_augmented(const Matrix& m, const Vector& x) {
  const int n = static_cast<int>(m.rows());
  Vector v(n * n + n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(k++) = m(i, j);
  v.tail(n) = x;
  return v;
}

void unflatten_augmented(const Vector& v, int n, Matrix& m, Vector& x) {
  m.resize(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v(k++);
  x = v.tail(n);
}

Vector flatten_symmetric_augmented(const Matrix& s, const Vector& x) {
  const int n = static_cast<int>(s.rows());
  Vector v(svec_dim(n) + n);
  v.head(svec_dim(n)) = svec(s);
  v.tail(n) = x;
  return v;
}

void unflatten_symmetric_augmented(const Vector& v, int n, Matrix& s, Vector& x) {
  s = smat(v.head(svec_dim(n)));
  x = v.tail(n);
}

Matrix orthonormal_basis(const Matrix& columns, double tol) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * std::max(1.0, top)) ++rank;
  return svd.matrixU().leftCols(rank);
}

Matrix orthonormal_complement(const Matrix& columns, int dim, double tol) {
  const Matrix basis = orthonormal_basis(columns, tol);
  Matrix proj = Matrix::Identity(dim, dim) - basis * basis.transpose();
  Eigen::JacobiSVD<Matrix> svd(proj, Eigen::ComputeThinU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 0.5) ++rank;  // projector eigenvalues are 0 or 1
  return svd.matrixU().leftCols(rank);
}

Matrix intersect_with_orthogonal(const Matrix& columns, const Vector& v, double tol) {
  const Matrix basis = orthonormal_basis(columns, tol);
  if (v.norm() <= tol) return basis;
  const Vector w = basis.transpose() * v;  // v's coordinates inside the span
  if (w.norm() <= tol * std::max(1.0, v.norm())) return basis;  // v orthogonal already
  // Remove the w-direction within the span.
  Matrix inside = Matrix::Identity(basis.cols(), basis.cols()) - (w / w.norm()) * (w / w.norm()).transpose();
  Matrix reduced = orthonormal_basis(inside, tol);
  return basis * reduced;
}

SphereMax max_quadratic_on_sphere(const Matrix& m, const Vector& g, double s) {
  const int n = static_cast<int>(m.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector d = es.eigenvalues();
  const Matrix v = es.eigenvectors();
  const double dmax = d(n - 1);
  const Vector gh = v.transpose() * g;

  auto value_at = [&](const Vector& u) { return u.dot(m * u) + 2.0 * g.dot(u) + s; };

  if (g.norm() < 1e-14 * std::max(1.0, m.norm())) {
    SphereMax out;
    out.arg = v.col(n - 1);
    out.value = value_at(out.arg);
    return out;
  }

  // Stationarity: (nu I - M) u = g with nu >= dmax and ||u|| = 1.
  auto norm2_at = [&](double nu) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double denom = nu - d(i);
      acc += (gh(i) * gh(i)) / (denom * denom);
    }
    return acc;
  };

  // Detect the degenerate branch: g has no component on the top eigenspace.
  double top_comp = 0.0;
  for (int i = 0; i < n; ++i)
    if (dmax - d(i) < 1e-10 * std::max(1.0, std::abs(dmax))) top_comp += gh(i) * gh(i);

  const double eps_edge = 1e-13 * std::max(1.0, g.norm());
  if (top_comp < eps_edge * eps_edge && norm2_at(dmax + 1e-11) <= 1.0) {
    // Hard case: solve in the complement and pad with a top eigenvector.
    Vector u = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      const double denom = dmax - d(i);
      if (denom > 1e-10 * std::max(1.0, std::abs(dmax))) u += (gh(i) / denom) * v.col(i);
    }
    const double rem = 1.0 - u.squaredNorm();
    Vector cand1 = u, cand2 = u;
    if (rem > 0) {
      cand1 += std::sqrt(rem) * v.col(n - 1);
      cand2 -= std::sqrt(rem) * v.col(n - 1);
    } else {
      cand1.normalize();
      cand2 = cand1;
    }
    SphereMax out;
    out.arg = value_at(cand1) >= value_at(cand2) ? cand1 : cand2;
    out.value = value_at(out.arg);
    return out;
  }

  // Secular root: ||u(nu)||^2 = 1 is decreasing on (dmax, inf).
  double lo = dmax + 1e-14 * std::max(1.0, std::abs(dmax));
  while (norm2_at(lo) < 1.0) lo = dmax + (lo - dmax) * 0.5;  // approach the pole
  double hi = dmax + g.norm() + 1.0;
  while (norm2_at(hi) > 1.0) hi = dmax + (hi - dmax) * 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (norm2_at(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  const double nu = 0.5 * (lo + hi);
  Vector u = Vector::Zero(n);
  for (int i = 0; i < n; ++i) u += (gh(i) / (nu - d(i))) * v.col(i);
  if (u.norm() > 0) u.normalize();
  SphereMax out;
  out.arg = u;
  out.value = value_at(u);
  return out;
}

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  // Fix signs for determinism.
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Vector random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

std::vector<Vector> sphere_directions(int n, int count, unsigned seed) {
  std::vector<Vector> dirs;
  if (n == 1) {
    dirs.push_back(Vector::Constant(1, 1.0));
    dirs.push_back(Vector::Constant(1, -1.0));
    return dirs;
  }
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double th = 2.0 * M_PI * k / count;
      Vector u(2);
      u << std::cos(th), std::sin(th);
      dirs.push_back(u);
    }
    return dirs;
  }
  for (int i = 0; i < n; ++i) {
    dirs.push_back(Vector::Unit(n, i));
    dirs.push_back(-Vector::Unit(n, i));
  }
  std::mt19937_64 rng(seed);
  while (static_cast<int>(dirs.size()) < count) dirs.push_back(random_unit_vector(n, rng));
  return dirs;
}

}  // namespace ader::linalg
