#include "tmkit/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tmkit::shapes {

namespace {

bool square_meets_circle(double x0, double y0, double x1, double y1, Point c, double r) {
  const double nx = std::clamp(c.x, x0, x1), ny = std::clamp(c.y, y0, y1);
  const double dmin = std::hypot(nx - c.x, ny - c.y);
  const double fx = std::max(std::abs(x0 - c.x), std::abs(x1 - c.x));
  const double fy = std::max(std::abs(y0 - c.y), std::abs(y1 - c.y));
  const double dmax = std::hypot(fx, fy);
  return dmin <= r && r <= dmax;
}

}  // namespace

Region from_predicate(const GridPtr& g, const std::function<bool(Point)>& inside, Kind kind) {
  CellSet s(g->cell_count());
  g->domain().for_each([&](int i) {
    if (inside(g->center(i))) s.set(static_cast<std::size_t>(i));
  });
  return Region(g, std::move(s), kind);
}

Region disk(const GridPtr& g, Point c, double r, Kind kind) {
  const bool closed = kind == Kind::Compact;
  return from_predicate(
      g,
      [=](Point p) {
        const double d = std::hypot(p.x - c.x, p.y - c.y);
        // Closed disks keep centres that sit on the circle up to rounding.
        return closed ? d <= r * (1.0 + 1e-12) : d < r;
      },
      kind);
}

Region rect(const GridPtr& g, double x0, double y0, double x1, double y1, Kind kind) {
  const bool closed = kind == Kind::Compact;
  return from_predicate(
      g,
      [=](Point p) {
        if (closed) return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
        return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
      },
      kind);
}

Region square(const GridPtr& g, Point c, double side, Kind kind) {
  const double h = 0.5 * side;
  return rect(g, c.x - h, c.y - h, c.x + h, c.y + h, kind);
}

Region annulus(const GridPtr& g, Point c, double r_in, double r_out, Kind kind) {
  const bool closed = kind == Kind::Compact;
  return from_predicate(
      g,
      [=](Point p) {
        const double d = std::hypot(p.x - c.x, p.y - c.y);
        return closed ? (d >= r_in && d <= r_out) : (d > r_in && d < r_out);
      },
      kind);
}

Region circle_ring(const GridPtr& g, Point c, double r, Kind kind) {
  const double hx = 0.5 * g->spec().dx(), hy = 0.5 * g->spec().dy();
  return from_predicate(
      g, [=](Point p) { return square_meets_circle(p.x - hx, p.y - hy, p.x + hx, p.y + hy, c, r); },
      kind);
}

std::vector<Offset> ring_template(const Grid& g, double r) {
  const double dx = g.spec().dx(), dy = g.spec().dy();
  const int kx = static_cast<int>(std::ceil(r / dx)) + 1;
  const int ky = static_cast<int>(std::ceil(r / dy)) + 1;
  std::vector<Offset> out;
  for (int j = -ky; j <= ky; ++j)
    for (int i = -kx; i <= kx; ++i) {
      const double x0 = (i - 0.5) * dx, x1 = (i + 0.5) * dx;
      const double y0 = (j - 0.5) * dy, y1 = (j + 0.5) * dy;
      if (square_meets_circle(x0, y0, x1, y1, {0.0, 0.0}, r)) out.emplace_back(i, j);
    }
  return out;
}

Point window_center(const Grid& g) {
  const GridSpec& s = g.spec();
  return {0.5 * (s.x_min + s.x_max), 0.5 * (s.y_min + s.y_max)};
}

Region boundary_arc(const GridPtr& g, double a0, double a1, Kind kind) {
  const Point c = window_center(*g);
  const double two_pi = 2.0 * std::numbers::pi;
  CellSet s(g->cell_count());
  g->boundary().for_each([&](int i) {
    const Point p = g->center(i);
    double a = std::atan2(p.y - c.y, p.x - c.x);
    while (a < a0) a += two_pi;
    while (a >= a0 + two_pi) a -= two_pi;
    if (a < a1) s.set(static_cast<std::size_t>(i));
  });
  return Region(g, std::move(s), kind);
}

}  // namespace tmkit::shapes
