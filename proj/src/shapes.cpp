#include "ader/shapes.hpp"

#include <cmath>
#include <stdexcept>

namespace ader::shapes {

Polytope regular_simplex(int n) {
  // Unit directions with pairwise inner product -1/n, from the corners of
  // the standard simplex in R^{n+1} projected along the diagonal.
  Matrix ones(n + 1, 1);
  ones.setOnes();
  Matrix basis = linalg::orthonormal_complement(ones, n + 1);  // (n+1) x n
  std::vector<Vector> verts;
  for (int i = 0; i <= n; ++i) {
    Vector w = -ones.col(0) / (n + 1.0);
    w(i) += 1.0;
    Vector u = basis.transpose() * w;
    verts.push_back(static_cast<double>(n) * u / u.norm());
  }
  return Polytope::from_vertices(verts);
}

Polytope cube(int n, double halfwidth) {
  std::vector<Vector> verts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i & 1) ? halfwidth : -halfwidth;
    verts.push_back(v);
  }
  return Polytope::from_vertices(verts);
}

Polytope cross_polytope(int n, double radius) {
  std::vector<Vector> verts;
  for (int i = 0; i < n; ++i) {
    verts.push_back(radius * Vector::Unit(n, i));
    verts.push_back(-radius * Vector::Unit(n, i));
  }
  return Polytope::from_vertices(verts);
}

Polytope regular_polygon(int sides, double radius) {
  if (sides < 3) throw std::invalid_argument("polygon needs at least 3 sides");
  std::vector<Vector> verts;
  for (int k = 0; k < sides; ++k) {
    const double th = 2.0 * M_PI * k / sides;
    Vector v(2);
    v << radius * std::cos(th), radius * std::sin(th);
    verts.push_back(v);
  }
  return Polytope::from_vertices(verts);
}

Polytope random_polytope(int n, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vector> pts;
    for (int k = 0; k < count; ++k) {
      Vector v(n);
      for (int i = 0; i < n; ++i) v(i) = gauss(rng);
      pts.push_back(v);
    }
    try {
      return Polytope::from_vertices(pts);
    } catch (const std::invalid_argument&) {
      // degenerate sample; redraw
    }
  }
  throw std::runtime_error("failed to sample a full-dimensional polytope");
}

Polytope random_symmetric_polytope(int n, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vector> pts;
    for (int k = 0; k < count; ++k) {
      Vector v(n);
      for (int i = 0; i < n; ++i) v(i) = gauss(rng);
      pts.push_back(v);
      pts.push_back(-v);
    }
    try {
      return Polytope::from_vertices(pts);
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("failed to sample a full-dimensional polytope");
}

}  // namespace ader::shapes
