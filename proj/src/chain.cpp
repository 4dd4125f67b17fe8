#include "ader/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "ader/errors.hpp"

namespace ader {

double ContainmentChain::scale() const {
  return std::max({middle.scale(), r * inner_shape.scale() + c.norm(), R * outer_shape.scale() + d.norm()});
}

Body ContainmentChain::inner_body() const {
  const int n = dim();
  return affine_image(inner_shape, r * Matrix::Identity(n, n), c);
}

Body ContainmentChain::outer_body() const {
  const int n = dim();
  return affine_image(outer_shape, R * Matrix::Identity(n, n), d);
}

double max_inner_radius(const Body& shape, const Vector& c, const Body& region) {
  const int n = shape.dim();
  if (region.is_polytope()) {
    double best = 1e300;
    for (const auto& f : region.polytope().facets()) {
      const double num = f.offset - f.normal.dot(c);
      const double den = support(shape, f.normal);
      if (den <= 1e-15) {
        if (num < 0) return 0.0;
        continue;
      }
      best = std::min(best, num / den);
    }
    return std::max(0.0, best);
  }
  const auto& e = region.ellipsoid();
  const Vector ec = c - e.center();
  const double cc = ec.dot(e.shape() * ec) - 1.0;
  if (cc >= 0.0) return 0.0;  // center not interior
  if (shape.is_polytope()) {
    double best = 1e300;
    for (const auto& v : shape.polytope().vertices()) {
      const double a = v.dot(e.shape() * v);
      if (a <= 1e-30) continue;
      const double b = 2.0 * v.dot(e.shape() * ec);
      const double root = (-b + std::sqrt(b * b - 4.0 * a * cc)) / (2.0 * a);
      best = std::min(best, root);
    }
    return std::max(0.0, best == 1e300 ? 0.0 : best);
  }
  // Ellipsoid shape inside an ellipsoid region: bisection on the containment check.
  double lo = 0.0, hi = 1.0;
  auto fits = [&](double rr) {
    Body img = affine_image(shape, rr * Matrix::Identity(n, n), c);
    return inclusion_slack(img, region).slack <= 1e-12 * std::max(1.0, region.scale());
  };
  if (!fits(1e-12)) return 0.0;
  while (fits(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

double min_outer_radius(const Body& region, const Body& shape, const Vector& d) {
  if (region.is_polytope()) {
    double best = 0.0;
    for (const auto& v : region.polytope().vertices())
      best = std::max(best, gauge(shape, v - d, Vector::Zero(shape.dim())));
    return best;
  }
  const auto& em = region.ellipsoid();
  if (shape.is_polytope()) {
    double best = 0.0;
    for (const auto& f : shape.polytope().facets()) {
      if (f.offset <= 1e-15) throw std::invalid_argument("outer shape must contain the origin in its interior");
      best = std::max(best, (support(region, f.normal) - f.normal.dot(d)) / f.offset);
    }
    return best;
  }
  // Both ellipsoids: maximize the shape gauge over the region boundary.
  const auto& es = shape.ellipsoid();
  const Matrix a = em.inv_sqrt_shape();
  const Vector ec = em.center() - d - es.center();
  const Matrix m = a * es.shape() * a;
  const Vector g = a * (es.shape() * ec);
  auto mx = linalg::max_quadratic_on_sphere(m, g, ec.dot(es.shape() * ec));
  return std::sqrt(std::max(0.0, mx.value));
}

namespace {

void verify_inclusions(const ContainmentChain& chain) {
  const double tol = 1e-9 * std::max(1.0, chain.scale());
  auto inner = inclusion_slack(chain.inner_body(), chain.middle);
  if (inner.slack > tol)
    throw PreconditionFailure("inner inclusion violated by " + std::to_string(inner.slack));
  auto outer = inclusion_slack(chain.middle, chain.outer_body());
  if (outer.slack > tol)
    throw PreconditionFailure("outer inclusion violated by " + std::to_string(outer.slack));
}

}  // namespace

ContainmentChain make_chain(Body inner_shape, Vector c, Body middle, Body outer_shape, Vector d) {
  ContainmentChain chain{std::move(inner_shape), std::move(c), 1.0, std::move(middle),
                         std::move(outer_shape), std::move(d), 1.0};
  chain.r = max_inner_radius(chain.inner_shape, chain.c, chain.middle);
  chain.R = min_outer_radius(chain.middle, chain.outer_shape, chain.d);
  if (chain.r <= 0.0) throw PreconditionFailure("inner center admits no positive inscribed radius");
  verify_inclusions(chain);
  return chain;
}

ContainmentChain make_chain_explicit(Body inner_shape, Vector c, double r, Body middle,
                                     Body outer_shape, Vector d, double R, bool require_extremal) {
  if (r <= 0 || R <= 0) throw std::invalid_argument("radii must be positive");
  ContainmentChain chain{std::move(inner_shape), std::move(c), r, std::move(middle),
                         std::move(outer_shape), std::move(d), R};
  verify_inclusions(chain);
  if (require_extremal) {
    const double rstar = max_inner_radius(chain.inner_shape, chain.c, chain.middle);
    const double Rstar = min_outer_radius(chain.middle, chain.outer_shape, chain.d);
    if (std::abs(rstar - r) > 1e-9 * std::max(1.0, rstar) ||
        std::abs(Rstar - R) > 1e-9 * std::max(1.0, Rstar))
      throw PreconditionFailure("chain radii are not extremal for the given centers");
  }
  return chain;
}

}  // namespace ader
