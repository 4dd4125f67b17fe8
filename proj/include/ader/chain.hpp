#pragma once

#include "ader/bodies.hpp"

namespace ader {

/// Verified containment chain r*L1 + c ⊆ K ⊆ R*L2 + d.  The radii are
/// extremal for the given shapes and centers unless constructed through the
/// unchecked path (used for deliberately slack experiment chains).
struct ContainmentChain {
  Body inner_shape;  // L1
  Vector c;
  double r;
  Body middle;       // K
  Body outer_shape;  // L2
  Vector d;
  double R;

  double ratio() const { return R / r; }
  int dim() const { return middle.dim(); }
  double scale() const;

  Body inner_body() const;  // r*L1 + c as a concrete body
  Body outer_body() const;  // R*L2 + d
};

/// Largest r with r*shape + c ⊆ region.
double max_inner_radius(const Body& shape, const Vector& c, const Body& region);

/// Smallest R with region ⊆ R*shape + d.  shape must contain the origin in
/// its interior.
double min_outer_radius(const Body& region, const Body& shape, const Vector& d);

/// Builds a chain with extremal radii for the given shapes and centers.
ContainmentChain make_chain(Body inner_shape, Vector c, Body middle, Body outer_shape, Vector d);

/// Builds a chain from explicit radii.  Verifies both inclusions; checks the
/// radii against the extremal values unless `require_extremal` is false.
ContainmentChain make_chain_explicit(Body inner_shape, Vector c, double r, Body middle,
                                     Body outer_shape, Vector d, double R,
                                     bool require_extremal = true);

}  // namespace ader
