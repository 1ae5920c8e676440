#pragma once

#include <utility>
#include <vector>

#include "tmkit/grid.hpp"
#include "tmkit/sampled_function.hpp"

namespace tmkit {

enum class Connectivity : std::uint8_t { Four = 4, Eight = 8 };

/// Compact regions connect through all 8 neighbours, open regions through
/// the 4 edge neighbours.
inline Connectivity connectivity_of(Kind k) noexcept {
  return k == Kind::Compact ? Connectivity::Eight : Connectivity::Four;
}

struct ComponentDecomposition {
  std::vector<Region> components;
  /// One flag per component. Always true when the window is the space;
  /// in the plane model a component touching the frame is unbounded.
  std::vector<bool> bounded;

  std::size_t size() const noexcept { return components.size(); }
};

/// Components in order of their lowest cell index; each keeps the input kind.
ComponentDecomposition connected_components(const Region& r);
std::size_t component_count(const Region& r);
bool is_connected(const Region& r);

/// Cell-set complement within the domain, kind flipped.
Region complement(const Region& r);

/// Connected, and the complement is connected (window is the space) or has
/// only unbounded components (plane model). The empty region is not solid.
bool is_solid(const Region& r);

/// strict: {f > t} tagged open; otherwise {f >= t} tagged compact.
Region superlevel_set(const SampledFunction& f, double t, bool strict);

/// Largest distance between member cell centers. Throws Error("empty-region").
double diameter(const Region& r);
/// Pairwise scan over all member cells; O(n^2), for tests and small regions.
double diameter_bruteforce(const Region& r);

/// No shared cell.
bool disjoint(const Region& a, const Region& b);
/// No shared cell and no adjacency under the connectivity of the pair
/// (8 when either region is compact, 4 when both are open). Two separated
/// regions stay distinct components of their union.
bool separated(const Region& a, const Region& b);

Region union_of(const Region& a, const Region& b);
Region intersection_of(const Region& a, const Region& b);

/// Morphology with the 3x3 (Eight) or plus-shaped (Four) element, repeated
/// `steps` times. Cells outside the domain count as absent.
CellSet dilate(const Grid& g, const CellSet& s, Connectivity c, int steps = 1);
CellSet erode(const Grid& g, const CellSet& s, Connectivity c, int steps = 1);

/// Cells of `s` moved by (dx, dy) cells; cells leaving the window or the
/// domain are dropped.
CellSet translate(const Grid& g, const CellSet& s, int dx, int dy);

/// Cells of `s` adjacent (under `c`) to a domain cell outside `s`.
CellSet inner_boundary(const Grid& g, const CellSet& s, Connectivity c);

/// Offset template morphology: dilate_by(s, T) = union of s + t over t in T;
/// erode_by(s, T) = cells c with c + t in s for every t in T.
using Offset = std::pair<int, int>;
CellSet dilate_by(const Grid& g, const CellSet& s, const std::vector<Offset>& offsets);
CellSet erode_by(const Grid& g, const CellSet& s, const std::vector<Offset>& offsets);

/// No 2x2 block of cells holds exactly a diagonal pair of members (cells
/// outside the domain count as non-members). On such sets the 4- and
/// 8-connected components coincide, for the set and for its complement.
bool is_well_composed(const Grid& g, const CellSet& s);

/// Chessboard distance (in cells) from every domain cell to the nearest
/// cell of `targets`, capped at `cap`. Cells in `targets` get 0.
std::vector<int> chessboard_distance(const Grid& g, const CellSet& targets, int cap);

}  // namespace tmkit
