#include "tmkit/report.hpp"

#include <cmath>

namespace tmkit {

std::size_t AxiomReport::count(const std::string& axiom) const {
  std::size_t n = 0;
  for (const Violation& v : violations)
    if (v.axiom == axiom) ++n;
  return n;
}

const Violation* AxiomReport::first(const std::string& axiom) const {
  for (const Violation& v : violations)
    if (v.axiom == axiom) return &v;
  return nullptr;
}

void AxiomReport::merge(const AxiomReport& other) {
  checked += other.checked;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

bool AxiomReport::expect(bool pass, Violation v) {
  ++checked;
  if (!pass) violations.push_back(std::move(v));
  return pass;
}

bool AxiomReport::expect_close(const std::string& axiom, double lhs, double rhs, double tol,
                               std::vector<Region> regions, std::vector<SampledFunction> functions,
                               std::string note) {
  const bool pass = lhs == rhs || std::abs(lhs - rhs) <= tol;
  return expect(pass, {axiom, std::move(regions), std::move(functions), lhs, rhs, tol, std::move(note)});
}

bool AxiomReport::expect_leq(const std::string& axiom, double lhs, double rhs, double tol,
                             std::vector<Region> regions, std::vector<SampledFunction> functions,
                             std::string note) {
  const bool pass = lhs <= rhs + tol;
  return expect(pass, {axiom, std::move(regions), std::move(functions), lhs, rhs, tol, std::move(note)});
}

}  // namespace tmkit
