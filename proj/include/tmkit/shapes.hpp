#pragma once

#include <functional>
#include <vector>

#include "tmkit/grid.hpp"
#include "tmkit/topology.hpp"

namespace tmkit::shapes {

// Rasterization is by cell center: a cell belongs to the shape iff its
// center does. Compact shapes use closed inequalities, open shapes strict
// ones.

Region from_predicate(const GridPtr& g, const std::function<bool(Point)>& inside, Kind kind);

Region disk(const GridPtr& g, Point c, double r, Kind kind = Kind::Compact);
Region rect(const GridPtr& g, double x0, double y0, double x1, double y1, Kind kind = Kind::Compact);
/// Axis-aligned square with the given center and side.
Region square(const GridPtr& g, Point c, double side, Kind kind = Kind::Compact);
Region annulus(const GridPtr& g, Point c, double r_in, double r_out, Kind kind = Kind::Compact);

/// Every cell whose square meets the circle |x - c| = r (supercover), so
/// the ring has no gaps under either connectivity.
Region circle_ring(const GridPtr& g, Point c, double r, Kind kind = Kind::Compact);

/// Cell offsets of the supercover circle of radius r around a cell center.
std::vector<Offset> ring_template(const Grid& g, double r);

/// Cells of the grid boundary ring whose polar angle about the window
/// center lies in [a0, a1) (radians, a0 < a1, range may exceed 2*pi).
Region boundary_arc(const GridPtr& g, double a0, double a1, Kind kind = Kind::Compact);

Point window_center(const Grid& g);

}  // namespace tmkit::shapes
