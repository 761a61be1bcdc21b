#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "seaoco/harness.hpp"

namespace seaoco {

/// Header `t,x1..xd,loss,grad_norm,eta,sigma_sq,Sigma_sq`.
std::string trace_csv_header(int dimension);
/// One line per round, doubles printed with 17 significant digits.
void write_trace_csv(const Trace& trace, std::ostream& out);
void write_trace_csv(const Trace& trace, const std::string& path);

nlohmann::json report_to_json(const RegretReport& report);
RegretReport report_from_json(const nlohmann::json& j);

/// Writes the JSON with a trailing newline; parent directories are created.
void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace seaoco
