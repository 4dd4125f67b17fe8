#include "ader/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ader::svg {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

std::string render(const std::vector<EllipseSpec>& ellipses, int width, int height) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& e : ellipses) {
    const double r = e.body.half_lengths().maxCoeff();
    xmin = std::min(xmin, e.body.center()(0) - r);
    xmax = std::max(xmax, e.body.center()(0) + r);
    ymin = std::min(ymin, e.body.center()(1) - r);
    ymax = std::max(ymax, e.body.center()(1) + r);
  }
  const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  const double sc = std::min(width / (xmax - xmin), height / (ymax - ymin));
  auto mapx = [&](double x) { return (x - xmin) * sc; };
  auto mapy = [&](double y) { return height - (y - ymin) * sc; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : ellipses) {
    const auto& b = e.body;
    const double cx = mapx(b.center()(0));
    const double cy = mapy(b.center()(1));
    // half_lengths are stored descending with matching axis columns.
    const double rx = b.half_lengths()(0) * sc;
    const double ry = b.half_lengths()(1) * sc;
    const Vector ax = b.axes().col(0);  // axis of the largest half-length
    const double deg = -std::atan2(ax(1), ax(0)) * 180.0 / M_PI;
    out << "  <ellipse cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" rx=\"" << num(rx)
        << "\" ry=\"" << num(ry) << "\" fill=\"none\" stroke=\"" << e.stroke
        << "\" stroke-width=\"2\"";
    if (!e.dash.empty()) out << " stroke-dasharray=\"" << e.dash << "\"";
    out << " transform=\"rotate(" << num(deg) << " " << num(cx) << " " << num(cy) << ")\"";
    out << " data-center=\"" << num(b.center()(0)) << "," << num(b.center()(1)) << "\"/>\n";
    out << "  <circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"3\" fill=\"" << e.stroke
        << "\"/>\n";
    if (!e.label.empty())
      out << "  <text x=\"" << num(cx + 6) << "\" y=\"" << num(cy - 6) << "\" font-size=\"16\">"
          << e.label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ader::svg
