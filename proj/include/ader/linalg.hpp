#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace ader {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace linalg {

/// Isometric flattening of a symmetric matrix: off-diagonal entries carry a
/// factor sqrt(2) so that svec(A).dot(svec(B)) equals the Frobenius product.
Vector svec(const Matrix& s);
Matrix smat(const Vector& v);
int svec_dim(int n);

/// Flattens (M | x), an n x n matrix with an extra column, row-major matrix
/// part first.  The matrix block occupies the first n*n coordinates.
Vector flatten_augmented(const Matrix& m, const Vector& x);
void unflatten_augmented(const Vector& v, int n, Matrix& m, Vector& x);

/// Flattens (svec(S) | x) for symmetric S.
Vector flatten_symmetric_augmented(const Matrix& s, const Vector& x);
void unflatten_symmetric_augmented(const Vector& v, int n, Matrix& s, Vector& x);

/// Orthonormal basis of the column span (rank detected at `tol` relative).
Matrix orthonormal_basis(const Matrix& columns, double tol = 1e-12);

/// Orthonormal basis of the orthogonal complement of span(columns) in R^d.
Matrix orthonormal_complement(const Matrix& columns, int dim, double tol = 1e-12);

/// Basis of span(columns) intersected with the hyperplane orthogonal to v.
Matrix intersect_with_orthogonal(const Matrix& columns, const Vector& v, double tol = 1e-12);

/// Maximizes u^T M u + 2 g^T u + s over the unit sphere ||u|| = 1.
/// M must be symmetric.  Returns the value and one maximizer.
struct SphereMax {
  double value;
  Vector arg;
};
SphereMax max_quadratic_on_sphere(const Matrix& m, const Vector& g, double s);

/// Haar-ish random orthogonal matrix (QR of a Gaussian sample).
Matrix random_orthogonal(int n, std::mt19937_64& rng);

Vector random_unit_vector(int n, std::mt19937_64& rng);

/// Deterministic spread of directions on the unit sphere: regular angles in
/// the plane, a seeded uniform sample plus the coordinate axes otherwise.
std::vector<Vector> sphere_directions(int n, int count, unsigned seed = 0);

}  // namespace linalg
}  // namespace ader
