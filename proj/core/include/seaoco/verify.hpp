#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace seaoco {

/// One measured quantity against its threshold. `margin` >= 0 means pass.
struct Check {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool passed = false;
};

struct CriterionResult {
  std::string id;
  std::string description;
  std::vector<Check> checks;
  /// Taken from the check with the smallest margin.
  double observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  /// Learners exercised by criteria that apply to both single learners.
  std::vector<std::string> learners{"oftrl", "omd"};
};

/// Criteria 1-11 and 13 with their canonical parameters.
CriterionResult run_criterion(int id, const VerifyOptions& options);

/// thm1 | thm2 | thm4 | msmwc | dyn | lb | o2b | corrupt | rom | propb6 | all
std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& options);

/// Bound/observed/margin table, one row per check.
std::string format_results(const std::vector<CriterionResult>& results);

/// Throws on an unknown suite name.
std::vector<int> suite_criteria(const std::string& suite);

}  // namespace seaoco
