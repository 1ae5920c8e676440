#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "tmkit/grid.hpp"

namespace tmkit {

/// One signed solid piece of a decomposition.
struct SolidTerm {
  Region piece;
  int coef = 0;
};

/// A region written as a signed sum of solid regions plus a multiple of
/// the whole space:  A = sum(coef_i * piece_i) + mass_coef * X.
///
/// Any set function that is finitely additive on the decomposition steps
/// (components, complements, holes) is determined by its values on the
/// pieces, which is how both solid-set functions and solid image rules are
/// extended to all regions.
struct SolidExpansion {
  std::vector<SolidTerm> terms;
  int mass_coef = 0;
};

/// Decomposes `r` into solid pieces.
///
/// Window-is-space grids: every non-solid connected component W becomes
/// X - sum of its complement components (each of which is solid).
/// Plane grids: a bounded non-solid component becomes its hull (the
/// component with its holes filled) minus the holes; an unbounded open
/// component becomes X minus its complement, and the complement is expanded
/// in turn.
///
/// Throws Error("non-finite") for compact regions touching the frame of a
/// plane grid or when the complement of an unbounded open component is
/// itself unbounded, and Error("unsupported-shape") when the recursion runs
/// past one step per grid cell.
std::shared_ptr<const SolidExpansion> solid_expansion(const Region& r);

/// Per-grid memo for solid_expansion. Internally synchronized.
class SolidExpansionCache {
 public:
  explicit SolidExpansionCache(std::size_t capacity = 4096) : capacity_(capacity) {}

  std::shared_ptr<const SolidExpansion> find(const Region& r) const;
  void insert(const Region& r, std::shared_ptr<const SolidExpansion> e);
  void clear();
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::size_t capacity_;
  std::unordered_map<Region, std::shared_ptr<const SolidExpansion>, RegionHash> map_;
};

}  // namespace tmkit
