#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tmkit/config.hpp"
#include "tmkit/report.hpp"

namespace tmkit::scenarios {

/// One report of a scenario and the axioms it must fail. A listed axiom
/// without a violation counts as unexpected, as does any other violation.
struct Section {
  std::string name;
  AxiomReport report;
  std::set<std::string> expected_failures;

  std::vector<std::string> unexpected() const;
};

struct ScenarioRun {
  std::string scenario;
  std::vector<Section> sections;
  /// file name -> CSV text.
  std::vector<std::pair<std::string, std::string>> tables;
  /// file name -> region written as PGM.
  std::vector<std::pair<std::string, Region>> regions;

  /// "<section>: <detail>" for every unexpected outcome.
  std::vector<std::string> unexpected() const;
  bool ok() const { return unexpected().empty(); }
  /// section,checked,violations,failing_axioms,expected_failures,status
  std::string summary_csv() const;
};

/// nonsubadditive, aarnes-partition, simplicity, it-axioms, duality, haar,
/// factorization, representable.
const std::vector<std::string>& names();

/// Runs `cfg.scenario`. Throws Error("bad-config") for an unknown name.
ScenarioRun run(const config::RunConfig& cfg);

/// Writes the summary, the tables, one report CSV per section (with witness
/// PGMs) and the region dumps under `out`. Returns the files written, in
/// order. Throws Error("io-error").
std::vector<std::filesystem::path> write(const ScenarioRun& run, const std::filesystem::path& out);

}  // namespace tmkit::scenarios
