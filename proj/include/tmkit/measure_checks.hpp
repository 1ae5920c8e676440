#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tmkit/measure.hpp"
#include "tmkit/report.hpp"
#include "tmkit/sampling.hpp"

namespace tmkit {

/// Checks a solid-set rule on sampled solid configurations:
///  "s1"  sum rule(C_i) <= rule(C) for separated compact solids C_i inside C;
///  "s2"  open solid U: rule(U) is attained along its compact erosion chain;
///  "s3"  compact solid K: rule(K) is attained along its open dilation chain;
///  "s4"  rule(X) = rule(K) + rule(X - K) (window-is-space grids; on the
///        plane a solid set has no nontrivial solid partition).
AxiomReport check_solid_axioms(const SolidSetRule& rule, RegionSampler& sampler, std::size_t trials);

/// Checks a measure on a sampled family:
///  "TM1"            additivity on separated pairs (compact pairs always,
///                   open pairs and complementary pairs when topological);
///  "monotonicity"   on nested pairs;
///  "superadditivity" on separated pieces inside a container.
AxiomReport check_dtm_axioms(const Measure& m, const RegionFamily& family);

/// First compact pair (C, K) with mu(C u K) > mu(C) + mu(K).
std::optional<std::pair<Region, Region>> subadditivity_witness(
    const Measure& m, const std::vector<std::pair<Region, Region>>& compact_pairs);

/// Compact pairs aimed at subadditivity failures: the two halves of each
/// anchor set, and small disks around pairs of anchor points that overlap.
std::vector<std::pair<Region, Region>> anchored_compact_pairs(const Measure& m);

/// Tolerance for comparing measure values of size `scale`.
double value_tolerance(double scale);

}  // namespace tmkit
