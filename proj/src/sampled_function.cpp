#include "tmkit/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tmkit/error.hpp"

namespace tmkit {

SampledFunction::SampledFunction(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->cell_count(), fill) {
  zero_outside_domain();
}

SampledFunction::SampledFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->cell_count())
    throw Error("bad-function", "value count does not match grid");
  zero_outside_domain();
}

SampledFunction SampledFunction::from_expression(GridPtr grid,
                                                 const std::function<double(Point)>& fn) {
  std::vector<double> v(grid->cell_count(), 0.0);
  grid->domain().for_each([&](int i) { v[static_cast<std::size_t>(i)] = fn(grid->center(i)); });
  return SampledFunction(std::move(grid), std::move(v));
}

void SampledFunction::zero_outside_domain() {
  if (grid_->model() != SpaceModel::Disk) return;
  const CellSet& d = grid_->domain();
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!d.test(i)) values_[i] = 0.0;
}

double SampledFunction::min() const {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  kernels::active().masked_minmax(values_.data(), grid_->domain().words().data(), values_.size(),
                                  &lo, &hi);
  return lo;
}

double SampledFunction::max() const {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  kernels::active().masked_minmax(values_.data(), grid_->domain().words().data(), values_.size(),
                                  &lo, &hi);
  return hi;
}

double SampledFunction::norm() const { return std::max(std::abs(min()), std::abs(max())); }

bool SampledFunction::vanishes_on_frame() const {
  bool ok = true;
  grid_->frame().for_each([&](int i) {
    if (values_[static_cast<std::size_t>(i)] != 0.0) ok = false;
  });
  return ok;
}

std::vector<double> SampledFunction::distinct_values() const {
  std::vector<double> v;
  v.reserve(values_.size());
  grid_->domain().for_each([&](int i) { v.push_back(values_[static_cast<std::size_t>(i)]); });
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

CellSet SampledFunction::support() const {
  CellSet s = CellSet::threshold(values_, 0.0, true);
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] < 0.0) s.set(i);
  s &= grid_->domain();
  return s;
}

void SampledFunction::validate() const {
  for (double v : values_)
    if (!std::isfinite(v)) throw Error("bad-function", "non-finite sample value");
  if (!grid_->window_is_space() && !vanishes_on_frame())
    throw Error("bad-function", "plane-model function must vanish on the frame ring");
}

SampledFunction SampledFunction::map(const std::function<double(double)>& phi) const {
  SampledFunction out(grid_, 0.0);
  grid_->domain().for_each([&](int i) {
    out.values_[static_cast<std::size_t>(i)] = phi(values_[static_cast<std::size_t>(i)]);
  });
  return out;
}

SampledFunction SampledFunction::positive_part() const {
  return map([](double v) { return v > 0.0 ? v : 0.0; });
}

SampledFunction SampledFunction::negative_part() const {
  return map([](double v) { return v < 0.0 ? -v : 0.0; });
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& o) {
  require_same_grid(*grid_, *o.grid_, "function sum");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

SampledFunction& SampledFunction::operator-=(const SampledFunction& o) {
  require_same_grid(*grid_, *o.grid_, "function difference");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

SampledFunction& SampledFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

SampledFunction operator*(const SampledFunction& a, const SampledFunction& b) {
  require_same_grid(*a.grid_, *b.grid_, "function product");
  SampledFunction out = a;
  for (std::size_t i = 0; i < out.values_.size(); ++i) out.values_[i] *= b.values_[i];
  return out;
}

bool SampledFunction::leq(const SampledFunction& o) const {
  require_same_grid(*grid_, *o.grid_, "function comparison");
  bool ok = true;
  grid_->domain().for_each([&](int i) {
    if (values_[static_cast<std::size_t>(i)] > o.values_[static_cast<std::size_t>(i)]) ok = false;
  });
  return ok;
}

double sup_distance(const SampledFunction& a, const SampledFunction& b) {
  require_same_grid(*a.grid(), *b.grid(), "sup distance");
  double d = 0.0;
  a.grid()->domain().for_each([&](int i) { d = std::max(d, std::abs(a[i] - b[i])); });
  return d;
}

}  // namespace tmkit
