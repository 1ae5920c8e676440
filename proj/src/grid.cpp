#include "tmkit/grid.hpp"

#include <cmath>

#include "tmkit/error.hpp"
#include "tmkit/solid_expansion.hpp"

namespace tmkit {

std::string to_string(SpaceModel m) {
  switch (m) {
    case SpaceModel::Square: return "square";
    case SpaceModel::Disk: return "disk";
    case SpaceModel::Plane: return "plane";
  }
  return "square";
}

SpaceModel space_model_from_string(const std::string& s) {
  if (s == "square") return SpaceModel::Square;
  if (s == "disk") return SpaceModel::Disk;
  if (s == "plane") return SpaceModel::Plane;
  throw Error("bad-grid", "unknown space model '" + s + "'");
}

void GridSpec::validate() const {
  if (nx < 4 || ny < 4) throw Error("bad-grid", "nx and ny must be at least 4");
  if (!(x_min < x_max) || !(y_min < y_max) || !std::isfinite(x_min) || !std::isfinite(x_max) ||
      !std::isfinite(y_min) || !std::isfinite(y_max))
    throw Error("bad-grid", "window bounds must satisfy min < max");
  if (!(cell_area() > 0.0)) throw Error("bad-grid", "cell area must be positive");
}

Grid::Grid(const GridSpec& spec)
    : spec_(spec),
      domain_(cell_count()),
      frame_(cell_count()),
      boundary_(cell_count()),
      cache_(std::make_unique<SolidExpansionCache>()) {
  const int nx = spec_.nx, ny = spec_.ny;
  if (spec_.model == SpaceModel::Disk) {
    const double cx = 0.5 * (spec_.x_min + spec_.x_max);
    const double cy = 0.5 * (spec_.y_min + spec_.y_max);
    const double r = 0.5 * std::min(spec_.x_max - spec_.x_min, spec_.y_max - spec_.y_min);
    for (int i = 0; i < nx * ny; ++i) {
      const Point p = center(i);
      if (std::hypot(p.x - cx, p.y - cy) <= r) domain_.set(static_cast<std::size_t>(i));
    }
  } else {
    for (int i = 0; i < nx * ny; ++i) domain_.set(static_cast<std::size_t>(i));
  }
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int i = index(ix, iy);
      if (!domain_.test(static_cast<std::size_t>(i))) continue;
      const bool on_edge = ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1;
      if (on_edge) frame_.set(static_cast<std::size_t>(i));
      bool outside_nbr = on_edge;
      for (int dy = -1; dy <= 1 && !outside_nbr; ++dy)
        for (int dx = -1; dx <= 1 && !outside_nbr; ++dx) {
          const int jx = ix + dx, jy = iy + dy;
          if (!domain_.test(static_cast<std::size_t>(index(jx, jy)))) outside_nbr = true;
        }
      if (outside_nbr) boundary_.set(static_cast<std::size_t>(i));
    }
  }
}

Grid::~Grid() = default;

std::shared_ptr<const Grid> Grid::make(const GridSpec& spec) {
  spec.validate();
  return std::shared_ptr<const Grid>(new Grid(spec));
}

Point Grid::center(int idx) const noexcept {
  return {spec_.x_min + (ix(idx) + 0.5) * spec_.dx(), spec_.y_min + (iy(idx) + 0.5) * spec_.dy()};
}

int Grid::cell_at(double x, double y) const noexcept {
  if (!(x >= spec_.x_min && x <= spec_.x_max && y >= spec_.y_min && y <= spec_.y_max)) return -1;
  int ix = static_cast<int>(std::floor((x - spec_.x_min) / spec_.dx()));
  int iy = static_cast<int>(std::floor((y - spec_.y_min) / spec_.dy()));
  if (ix >= spec_.nx) ix = spec_.nx - 1;
  if (iy >= spec_.ny) iy = spec_.ny - 1;
  const int i = index(ix, iy);
  return domain_.test(static_cast<std::size_t>(i)) ? i : -1;
}

std::string to_string(Kind k) { return k == Kind::Open ? "open" : "compact"; }

Kind kind_from_string(const std::string& s) {
  if (s == "open") return Kind::Open;
  if (s == "compact") return Kind::Compact;
  throw Error("bad-region-file", "unknown region kind '" + s + "'");
}

Region::Region(GridPtr grid, CellSet cells, Kind kind)
    : grid_(std::move(grid)), cells_(std::move(cells)), kind_(kind) {
  if (!grid_) throw Error("bad-grid", "region without grid");
  if (cells_.size() != grid_->cell_count())
    throw Error("grid-mismatch", "cell set size does not match grid");
  if (grid_->model() == SpaceModel::Disk) cells_ &= grid_->domain();
}

Region Region::empty(GridPtr grid, Kind kind) {
  const std::size_t n = grid->cell_count();
  return Region(std::move(grid), CellSet(n), kind);
}

Region Region::full(GridPtr grid, Kind kind) {
  CellSet d = grid->domain();
  return Region(std::move(grid), std::move(d), kind);
}

Region Region::from_indices(GridPtr grid, const std::vector<int>& cells, Kind kind) {
  CellSet s(grid->cell_count());
  for (int c : cells)
    if (c >= 0 && static_cast<std::size_t>(c) < s.size()) s.set(static_cast<std::size_t>(c));
  return Region(std::move(grid), std::move(s), kind);
}

std::size_t Region::hash() const noexcept {
  return cells_.hash() * 31u + static_cast<std::size_t>(kind_);
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!a.compatible(b)) throw Error("grid-mismatch", std::string(what) + ": grids differ");
}

}  // namespace tmkit
