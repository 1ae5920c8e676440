#pragma once

#include "tmkit/grid.hpp"

namespace tmkit::testing {

inline GridPtr square_grid(int n = 48) {
  return Grid::make({0.0, 1.0, 0.0, 1.0, n, n, SpaceModel::Square});
}

inline GridPtr disk_grid(int n = 48) {
  return Grid::make({-1.0, 1.0, -1.0, 1.0, n, n, SpaceModel::Disk});
}

/// Window of the two-point example, coarser than the reference grid.
inline GridPtr plane_grid(int n = 72) {
  return Grid::make({-2.0, 4.0, -3.0, 3.0, n, n, SpaceModel::Plane});
}

}  // namespace tmkit::testing
