#include "tmkit/solid_expansion.hpp"

#include "tmkit/error.hpp"
#include "tmkit/topology.hpp"

namespace tmkit {

namespace {

struct Expander {
  const Grid& grid;
  SolidExpansion& out;
  std::size_t steps = 0;

  void step() {
    if (++steps > grid.cell_count())
      throw Error("unsupported-shape", "solid decomposition did not terminate");
  }

  void expand(const Region& r, int coef) {
    if (r.empty()) return;
    step();
    const ComponentDecomposition comps = connected_components(r);
    for (std::size_t k = 0; k < comps.size(); ++k) component(comps.components[k], comps.bounded[k], coef);
  }

  // `w` is connected.
  void component(const Region& w, bool bounded, int coef) {
    step();
    const Region rest = complement(w);
    const ComponentDecomposition holes = connected_components(rest);
    if (grid.window_is_space()) {
      if (holes.size() <= 1) {
        out.terms.push_back({w, coef});
        return;
      }
      out.terms.push_back({Region::full(w.grid(), w.kind()), coef});
      for (const Region& v : holes.components) out.terms.push_back({v, -coef});
      return;
    }
    if (!bounded) {
      if (w.is_compact())
        throw Error("non-finite", "compact region touches the frame of a plane grid");
      bool solid = true;
      for (bool b : holes.bounded) solid = solid && !b;
      if (solid) {
        out.terms.push_back({w, coef});
        return;
      }
      if (rest.touches_frame())
        throw Error("non-finite", "value needed on an unbounded non-solid set");
      out.mass_coef += coef;
      expand(rest, -coef);
      return;
    }
    CellSet hull = w.cells();
    std::vector<const Region*> inner;
    for (std::size_t k = 0; k < holes.size(); ++k) {
      if (holes.bounded[k]) {
        hull |= holes.components[k].cells();
        inner.push_back(&holes.components[k]);
      }
    }
    if (inner.empty()) {
      out.terms.push_back({w, coef});
      return;
    }
    out.terms.push_back({w.with_cells(std::move(hull)), coef});
    // A hole of a connected set is connected and its complement is
    // connected and unbounded, so each hole is solid.
    for (const Region* h : inner) out.terms.push_back({*h, -coef});
  }
};

}  // namespace

std::shared_ptr<const SolidExpansion> solid_expansion(const Region& r) {
  SolidExpansionCache& cache = r.grid()->expansion_cache();
  if (auto hit = cache.find(r)) return hit;
  auto e = std::make_shared<SolidExpansion>();
  Expander x{*r.grid(), *e};
  x.expand(r, 1);
  cache.insert(r, e);
  return e;
}

std::shared_ptr<const SolidExpansion> SolidExpansionCache::find(const Region& r) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(r);
  return it == map_.end() ? nullptr : it->second;
}

void SolidExpansionCache::insert(const Region& r, std::shared_ptr<const SolidExpansion> e) {
  std::lock_guard<std::mutex> lock(mu_);
  if (map_.size() >= capacity_) map_.clear();
  map_.emplace(r, std::move(e));
}

void SolidExpansionCache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  map_.clear();
}

std::size_t SolidExpansionCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

}  // namespace tmkit
