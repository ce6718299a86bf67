#pragma once
#include <map>
#include <string>
#include <vector>

#include "conekit/config.hpp"

namespace conekit {

/// Outcome of one verification check. `measured` values carry their tolerance
/// and provenance tag so the report is self-describing.
struct CheckResult {
  std::string name;
  bool pass = false;
  bool expected_fail = false;  // negative controls assert failure
  std::string tag;             // provenance of the expected value
  std::map<std::string, double> measured;
  std::map<std::string, double> tolerances;
  std::string note;

  bool ok() const { return expected_fail ? !pass : pass; }
};

/// Plain tabular data for plotting (decay fits, shell statistics, trends).
struct PlotTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunReport {
  std::string suite_name;
  std::uint64_t seed = 0;
  std::string environment;  // compiler fingerprint; no wall-clock data
  std::vector<CheckResult> checks;
  std::vector<PlotTable> tables;
  std::map<std::string, double> timings_ms;  // excluded from the JSON body

  bool all_passed() const;
  /// Deterministic JSON (timings go to a separate sidecar).
  std::string to_json() const;
  std::string timings_json() const;
  void write(const std::string& dir) const;  // report.json + report_timings.json
};

void emit_plots(const RunReport& report, const std::string& dir);

std::string environment_fingerprint();

}  // namespace conekit
