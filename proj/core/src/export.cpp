#include "seaoco/export.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "seaoco/errors.hpp"

namespace seaoco {
namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::ofstream open_for_write(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path));
  return out;
}

// JSON has no infinity; non-finite values are written as null.
nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

double read_number(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? kInfinity : v.get<double>();
}

}  // namespace

std::string trace_csv_header(int dimension) {
  std::string h = "t";
  for (int i = 1; i <= dimension; ++i) h += fmt::format(",x{}", i);
  return h + ",loss,grad_norm,eta,sigma_sq,Sigma_sq";
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << trace_csv_header(trace.domain.dimension()) << '\n';
  for (const auto& r : trace.rounds) {
    std::string line = std::to_string(r.t);
    for (Eigen::Index i = 0; i < r.x.size(); ++i) line += ',' + num(r.x[i]);
    line += ',' + num(r.loss) + ',' + num(r.g.norm()) + ',' + num(r.step) + ',' + num(r.sigma_sq) + ',' +
            num(r.Sigma_sq);
    out << line << '\n';
  }
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  auto out = open_for_write(path);
  write_trace_csv(trace, out);
}

nlohmann::json report_to_json(const RegretReport& r) {
  nlohmann::json j;
  j["T"] = r.T;
  j["D"] = r.D;
  j["G"] = r.G;
  j["L"] = r.L;
  j["mu"] = r.mu;
  j["static_regret"] = r.static_regret;
  j["linearized_regret"] = r.linearized_regret;
  j["dynamic_regret"] = r.dynamic_regret ? nlohmann::json(*r.dynamic_regret) : nlohmann::json(nullptr);
  j["comparator"] = std::vector<double>(r.comparator.data(), r.comparator.data() + r.comparator.size());
  j["bound_value"] = finite_or_null(r.bound_value);
  j["bound_margin"] = finite_or_null(r.bound_margin);
  j["sigma_bar"] = r.sigma_bar;
  j["Sigma_bar"] = r.Sigma_bar;
  j["sigma_max"] = r.sigma_max;
  j["Sigma_max"] = r.Sigma_max;
  j["C"] = r.C;
  j["sigma1_sq"] = r.sigma1_sq;
  j["sigma1_tilde_sq"] = r.sigma1_tilde_sq;
  return j;
}

RegretReport report_from_json(const nlohmann::json& j) {
  RegretReport r;
  r.T = j.at("T").get<int>();
  r.D = j.at("D").get<double>();
  r.G = j.at("G").get<double>();
  r.L = j.at("L").get<double>();
  r.mu = j.at("mu").get<double>();
  r.static_regret = j.at("static_regret").get<double>();
  r.linearized_regret = j.at("linearized_regret").get<double>();
  if (!j.at("dynamic_regret").is_null()) r.dynamic_regret = j.at("dynamic_regret").get<double>();
  const auto c = j.at("comparator").get<std::vector<double>>();
  r.comparator = Eigen::Map<const Vector>(c.data(), static_cast<Eigen::Index>(c.size()));
  r.bound_value = read_number(j, "bound_value");
  r.bound_margin = read_number(j, "bound_margin");
  r.sigma_bar = j.at("sigma_bar").get<double>();
  r.Sigma_bar = j.at("Sigma_bar").get<double>();
  r.sigma_max = j.at("sigma_max").get<double>();
  r.Sigma_max = j.at("Sigma_max").get<double>();
  r.C = j.at("C").get<double>();
  r.sigma1_sq = j.at("sigma1_sq").get<double>();
  r.sigma1_tilde_sq = j.at("sigma1_tilde_sq").get<double>();
  return r;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
}

}  // namespace seaoco
