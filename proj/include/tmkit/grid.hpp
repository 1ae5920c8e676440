#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "tmkit/cellset.hpp"

namespace tmkit {

/// How the rectangular window relates to the ambient space X.
enum class SpaceModel : std::uint8_t {
  Square,  ///< X is the window itself (compact)
  Disk,    ///< X is the disk inscribed in the window; cells outside do not exist
  Plane,   ///< the window is a viewport into R^2; the frame ring stands in for infinity
};

std::string to_string(SpaceModel m);
SpaceModel space_model_from_string(const std::string& s);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  int nx = 64;
  int ny = 64;
  SpaceModel model = SpaceModel::Square;

  bool window_is_space() const noexcept { return model != SpaceModel::Plane; }
  double dx() const noexcept { return (x_max - x_min) / nx; }
  double dy() const noexcept { return (y_max - y_min) / ny; }
  double cell_area() const noexcept { return dx() * dy(); }
  /// Larger of the two cell side lengths.
  double pitch() const noexcept { return dx() > dy() ? dx() : dy(); }

  /// Throws Error("bad-grid") on nx/ny < 4 or an empty window.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

class SolidExpansionCache;

/// Immutable discretized window. Shared between all regions, functions and
/// measures built on it; holds the domain mask (disk cells only for the
/// disk model), the frame ring and the per-grid decomposition memo.
class Grid {
 public:
  static std::shared_ptr<const Grid> make(const GridSpec& spec);
  ~Grid();

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  const GridSpec& spec() const noexcept { return spec_; }
  int nx() const noexcept { return spec_.nx; }
  int ny() const noexcept { return spec_.ny; }
  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(spec_.nx) * static_cast<std::size_t>(spec_.ny);
  }
  SpaceModel model() const noexcept { return spec_.model; }
  bool window_is_space() const noexcept { return spec_.window_is_space(); }

  int index(int ix, int iy) const noexcept { return iy * spec_.nx + ix; }
  int ix(int idx) const noexcept { return idx % spec_.nx; }
  int iy(int idx) const noexcept { return idx / spec_.nx; }
  Point center(int idx) const noexcept;
  /// Cell containing (x, y), or -1 when outside the window or the domain.
  int cell_at(double x, double y) const noexcept;
  int cell_at(Point p) const noexcept { return cell_at(p.x, p.y); }

  /// Cells that exist.
  const CellSet& domain() const noexcept { return domain_; }
  /// Domain cells on the outermost window ring.
  const CellSet& frame() const noexcept { return frame_; }
  /// Domain cells with an 8-neighbour outside the domain (or on the window
  /// edge). For the disk model this is the rasterized boundary circle.
  const CellSet& boundary() const noexcept { return boundary_; }

  bool compatible(const Grid& other) const noexcept {
    return this == &other || spec_ == other.spec_;
  }

  SolidExpansionCache& expansion_cache() const noexcept { return *cache_; }

 private:
  explicit Grid(const GridSpec& spec);

  GridSpec spec_;
  CellSet domain_;
  CellSet frame_;
  CellSet boundary_;
  std::unique_ptr<SolidExpansionCache> cache_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Open vs compact tag. Compact regions use 8-neighbour connectivity and
/// open regions 4-neighbour connectivity, so a set and its complement
/// always use the dual pair.
enum class Kind : std::uint8_t { Open, Compact };

inline Kind flip(Kind k) noexcept { return k == Kind::Open ? Kind::Compact : Kind::Open; }
std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

/// A cell-set with a kind tag, standing in for an open or compact subset
/// of X. Cells outside the grid domain are always dropped.
class Region {
 public:
  Region() = default;
  Region(GridPtr grid, CellSet cells, Kind kind);

  static Region empty(GridPtr grid, Kind kind);
  static Region full(GridPtr grid, Kind kind);
  static Region from_indices(GridPtr grid, const std::vector<int>& cells, Kind kind);

  const GridPtr& grid() const noexcept { return grid_; }
  const CellSet& cells() const noexcept { return cells_; }
  Kind kind() const noexcept { return kind_; }
  bool is_open() const noexcept { return kind_ == Kind::Open; }
  bool is_compact() const noexcept { return kind_ == Kind::Compact; }

  bool empty() const noexcept { return cells_.none(); }
  std::size_t count() const noexcept { return cells_.count(); }
  bool contains(int idx) const noexcept { return idx >= 0 && cells_.test(static_cast<std::size_t>(idx)); }
  bool touches_frame() const noexcept { return cells_.intersects(grid_->frame()); }
  bool is_full() const noexcept { return cells_ == grid_->domain(); }

  Region with_kind(Kind k) const { return Region(grid_, cells_, k); }
  Region with_cells(CellSet cells) const { return Region(grid_, std::move(cells), kind_); }

  std::size_t hash() const noexcept;

  friend bool operator==(const Region& a, const Region& b) noexcept {
    return a.kind_ == b.kind_ && a.grid_ && b.grid_ && a.grid_->compatible(*b.grid_) &&
           a.cells_ == b.cells_;
  }

 private:
  GridPtr grid_;
  CellSet cells_;
  Kind kind_ = Kind::Compact;
};

struct RegionHash {
  std::size_t operator()(const Region& r) const noexcept { return r.hash(); }
};

/// Throws Error("grid-mismatch") unless both grids are compatible.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace tmkit
