#pragma once

#include <random>

#include "ader/bodies.hpp"

namespace ader::shapes {

/// Regular simplex centered at the origin with inscribed ball radius 1
/// (vertices then sit at distance n).
Polytope regular_simplex(int n);

Polytope cube(int n, double halfwidth = 1.0);

Polytope cross_polytope(int n, double radius = 1.0);

Polytope regular_polygon(int sides, double radius = 1.0);

/// Convex hull of `count` Gaussian points (re-sampled until full-dimensional).
Polytope random_polytope(int n, int count, std::mt19937_64& rng);

/// Hull of points together with their reflections.
Polytope random_symmetric_polytope(int n, int count, std::mt19937_64& rng);

}  // namespace ader::shapes
