#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tmkit/grid.hpp"
#include "tmkit/sampled_function.hpp"

namespace tmkit {

struct Violation {
  std::string axiom;
  std::vector<Region> regions;
  std::vector<SampledFunction> functions;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  std::string note;
};

/// Outcome of a property sweep: how many instances were checked and the
/// ones that failed, with witnesses.
struct AxiomReport {
  std::size_t checked = 0;
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(const std::string& axiom) const;
  const Violation* first(const std::string& axiom) const;
  void merge(const AxiomReport& other);

  /// Counts one instance; records a violation when `pass` is false.
  bool expect(bool pass, Violation v);
  /// |lhs - rhs| <= tol.
  bool expect_close(const std::string& axiom, double lhs, double rhs, double tol,
                    std::vector<Region> regions = {}, std::vector<SampledFunction> functions = {},
                    std::string note = {});
  /// lhs <= rhs + tol.
  bool expect_leq(const std::string& axiom, double lhs, double rhs, double tol,
                  std::vector<Region> regions = {}, std::vector<SampledFunction> functions = {},
                  std::string note = {});
};

}  // namespace tmkit
