#ifndef EVOCERT_REPORT_HPP
#define EVOCERT_REPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evocert/certificate.hpp"
#include "evocert/solver.hpp"
#include "evocert/verify.hpp"

namespace evocert {

/// One theorem row in a run report; expected=false marks expected-fail rows.
struct TheoremRow {
  TheoremReport report;
  bool expected = true;
  bool ok() const { return report.passed == expected; }
};

/// Machine-readable result of one CLI run.  Deterministic given config
/// and seed; contains no wall-clock fields.
struct RunReport {
  int schema_version = 1;
  std::string config_hash;
  unsigned long seed = 0;
  std::string version;
  std::vector<Certificate> certificates;
  std::vector<TheoremRow> theorems;
  std::optional<SolveReport> solve;
  std::vector<std::string> notes;

  bool all_ok() const;
};

/// Stable-layout JSON document for the report.
std::string to_json_string(const RunReport& r);

}  // namespace evocert

#endif
