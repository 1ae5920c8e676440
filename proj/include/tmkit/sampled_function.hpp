#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tmkit/grid.hpp"

namespace tmkit {

/// Real values on grid cells, standing in for f in C_0(X). Values on cells
/// outside the domain are kept at zero and ignored everywhere.
class SampledFunction {
 public:
  SampledFunction() = default;
  explicit SampledFunction(GridPtr grid, double fill = 0.0);
  SampledFunction(GridPtr grid, std::vector<double> values);

  /// f(c) = fn(center of c) on domain cells.
  static SampledFunction from_expression(GridPtr grid, const std::function<double(Point)>& fn);

  const GridPtr& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](int idx) const noexcept { return values_[static_cast<std::size_t>(idx)]; }
  double& operator[](int idx) noexcept { return values_[static_cast<std::size_t>(idx)]; }

  /// Min / max over domain cells.
  double min() const;
  double max() const;
  /// Sup norm over domain cells.
  double norm() const;
  bool nonnegative() const { return min() >= 0.0; }
  /// Plane model: true iff the function vanishes on the frame ring.
  bool vanishes_on_frame() const;
  /// Distinct domain values, ascending.
  std::vector<double> distinct_values() const;
  /// Cells where the function is nonzero.
  CellSet support() const;

  /// Throws Error("bad-function") on non-finite values, or when a
  /// plane-model function does not vanish on the frame.
  void validate() const;

  SampledFunction map(const std::function<double(double)>& phi) const;
  SampledFunction positive_part() const;
  SampledFunction negative_part() const;

  SampledFunction& operator+=(const SampledFunction& o);
  SampledFunction& operator-=(const SampledFunction& o);
  SampledFunction& operator*=(double c);
  friend SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
  friend SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
  friend SampledFunction operator*(SampledFunction a, double c) { return a *= c; }
  friend SampledFunction operator*(double c, SampledFunction a) { return a *= c; }
  /// Pointwise product.
  friend SampledFunction operator*(const SampledFunction& a, const SampledFunction& b);

  /// True iff f <= g on every domain cell.
  bool leq(const SampledFunction& o) const;

  friend bool operator==(const SampledFunction& a, const SampledFunction& b) {
    return a.values_ == b.values_;
  }

 private:
  void zero_outside_domain();

  GridPtr grid_;
  std::vector<double> values_;
};

/// Largest absolute cellwise difference over domain cells.
double sup_distance(const SampledFunction& a, const SampledFunction& b);

}  // namespace tmkit
