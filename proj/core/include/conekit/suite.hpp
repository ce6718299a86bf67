#pragma once
#include <map>
#include <string>
#include <vector>

#include "conekit/background.hpp"
#include "conekit/config.hpp"
#include "conekit/report.hpp"

namespace conekit {

/// Runs the verification checks in dependency order. Checks are isolated:
/// a thrown exception marks the check failed and the suite continues.
/// Fixed seed makes the report JSON byte-identical across runs.
class VerificationSuite {
 public:
  explicit VerificationSuite(ExperimentConfig cfg);

  // criteria, in suite order
  std::vector<CheckResult> check_flattening();        // 1
  std::vector<CheckResult> check_phi_bound();         // 2
  std::vector<CheckResult> check_phase_lemma();       // 3
  std::vector<CheckResult> check_poisson();           // 4
  std::vector<CheckResult> check_expansion();         // 5
  std::vector<CheckResult> check_m_eta();             // 6
  std::vector<CheckResult> check_background();        // 7
  std::vector<CheckResult> check_volume_identities(); // 8
  std::vector<CheckResult> check_ricci();             // 9
  std::vector<CheckResult> check_curvature();         // 10

  RunReport run_all();

  const BackgroundResult& background(const std::string& geometry);
  const ExperimentConfig& config() const { return cfg_; }

 private:
  ExperimentConfig cfg_;
  std::map<std::string, BackgroundResult> backgrounds_;
  std::vector<PlotTable> tables_;

  std::uint64_t seed_for(const std::string& check) const;
  std::vector<CheckResult> guarded(const std::string& name,
                                   std::vector<CheckResult> (VerificationSuite::*fn)());
};

RunReport run_suite(const ExperimentConfig& cfg);

}  // namespace conekit
