#pragma once

#include <string>
#include <vector>

#include "ader/bodies.hpp"

namespace ader::svg {

struct EllipseSpec {
  Ellipsoid body;     // 2-D only
  std::string stroke = "#000000";
  std::string dash;   // SVG dasharray, empty for solid
  std::string label;
};

/// Fixed-viewport SVG 1.1 figure of 2-D ellipses with center markers; each
/// ellipse carries a data-center="x,y" attribute in world coordinates.
std::string render(const std::vector<EllipseSpec>& ellipses, int width = 820, int height = 620);

}  // namespace ader::svg
