#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seaoco/config.hpp"
#include "seaoco/errors.hpp"
#include "seaoco/harness.hpp"

namespace seaoco {

/// A failed episode; the message carries the experiment, horizon and episode.
class RunError : public Error {
 public:
  using Error::Error;
};

/// Fills the corruption budget and pool variances the corruption and random-order bounds read.
void annotate_report(RegretReport& report, const Trace& trace, const EnvSpec& env);

struct HorizonResult {
  int T = 0;
  std::vector<RegretReport> reports;
  Summary regret;
};

struct RunResult {
  std::string directory;
  std::vector<HorizonResult> horizons;
  /// Log-log slope of mean regret against T; needs four or more horizons.
  std::optional<double> rate;
  nlohmann::json report;
};

/// Runs every (T, episode) pair of the config. Traces go to
/// <out>/<experiment>/<episode>.csv, or <out>/<experiment>/T<T>/<episode>.csv
/// when several horizons are swept, and the summary to report.json.
RunResult run_experiment(const Config& config);

}  // namespace seaoco
