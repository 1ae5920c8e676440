#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tmkit/image_transform.hpp"
#include "tmkit/io.hpp"
#include "tmkit/measure.hpp"

namespace tmkit::config {

using io::json;

/// Measure selection {"type": ..., params}. Points are [x, y] pairs.
///   two_point      {"p1", "p2"}              plane grid
///   odd_points     {"points": [[x, y], ...]} an odd number of points
///   aarnes_circle  {"p", "eps"}              eps = 0 on a disk grid
///   blob_dtm       {"center", "radius"}
///   lebesgue, normalized_lebesgue
///   point_mass     {"x"}
///   combination    {"coeffs": [...], "measures": [...]}
/// Throws Error("bad-config").
Measure measure_from_json(const GridPtr& g, const json& j);

/// Transform selection {"type": ..., params}, X = Y = g.
///   identity
///   translation        {"dx", "dy"} in cells
///   reflection
///   two_point          {"x", "z"}
///   boundary           {"center", "radius"} circle, default the grid boundary
///   resolution_kill    {"eps", "route": "scan" | "morph"}
///   measure_threshold  {"eps", "measure"} (default normalized_lebesgue)
///   constant           {"measure"} (default point mass at the window centre)
/// Throws Error("bad-config").
ImageTransform transform_from_json(const GridPtr& g, const json& j);

/// A transform type name with default parameters: {"type": name}.
json transform_spec(const std::string& name);

struct RunConfig {
  std::string scenario;
  std::optional<GridSpec> grid;
  /// --grid NxM: replaces nx and ny of whichever grid the scenario uses.
  std::optional<std::pair<int, int>> grid_size;
  std::optional<json> measure;
  std::optional<json> transform;
  std::uint64_t seed = 1;
  std::filesystem::path out = "tmkit-out";
  std::optional<double> tolerance;
  std::vector<double> eps;
  std::optional<std::size_t> trials;
};

/// Keys: scenario, grid, measure, transform, seed, out, tolerance, eps,
/// trials. Unknown keys are rejected with Error("bad-config").
RunConfig run_config_from_json(const json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// "NxM" -> (N, M). Throws Error("bad-config").
std::pair<int, int> parse_grid_size(const std::string& s);
/// "0.1,0.2" -> {0.1, 0.2}. Throws Error("bad-config").
std::vector<double> parse_double_list(const std::string& s);

}  // namespace tmkit::config
