#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "seaoco/errors.hpp"
#include "seaoco/harness.hpp"

namespace seaoco {
namespace {

// (27 + 6 sqrt2) L D^2 + (2 + 4 sqrt2) D (sigma_bar + Sigma_bar) sqrt T
double adaptive_bound(double L, double D, double sigma_bar, double Sigma_bar, int T) {
  const double r2 = std::numbers::sqrt2;
  return (27.0 + 6.0 * r2) * L * D * D + (2.0 + 4.0 * r2) * D * (sigma_bar + Sigma_bar) * std::sqrt(double(T));
}

void require_mu(const RegretReport& r) {
  if (!(r.mu > 0.0)) throw InvalidArgument("strongly convex bounds need mu > 0");
}

}  // namespace

double bound_value(const RegretReport& r, const std::string& theorem) {
  if (r.T < 1) throw InvalidArgument("report has no rounds");
  const double T = r.T;
  if (theorem == "thm1" || theorem == "thm2") return adaptive_bound(r.L, r.D, r.sigma_bar, r.Sigma_bar, r.T);
  if (theorem == "worst_case") return (2.0 * std::numbers::sqrt2 + 4.0) * r.D * r.G * std::sqrt(T);
  if (theorem == "thm4") {
    require_mu(r);
    const double s2 = r.sigma_max * r.sigma_max;
    const double S2 = r.Sigma_max * r.Sigma_max;
    return (8.0 * s2 + 4.0 * S2) * std::log(T) / r.mu +
           4.0 * r.D * r.D * r.L * r.L / r.mu * std::log(1.0 + 16.0 * r.L / r.mu);
  }
  if (theorem == "msmwc") {
    require_mu(r);
    const double lg = std::log(r.D * T);
    const double s2 = r.sigma_max * r.sigma_max;
    const double S2 = r.Sigma_max * r.Sigma_max;
    return 64.0 * (s2 + S2 + r.D * r.D * r.L * r.L) * lg * lg / r.mu + 64.0 * r.D * r.D;
  }
  if (theorem == "corollary_corrupt") {
    return adaptive_bound(r.L, r.D, r.sigma_bar, std::sqrt(4.0 * r.G * r.C / T), r.T);
  }
  if (theorem == "corollary_rom") {
    double s2 = 0.0;
    if (r.sigma1_sq > 0.0) {
      s2 = r.sigma1_sq * std::log(2.0 * std::exp(2.0) * r.sigma1_tilde_sq / r.sigma1_sq);
    }
    return adaptive_bound(r.L, r.D, std::sqrt(std::max(s2, 0.0)), std::sqrt(8.0 * r.G * r.G / T), r.T);
  }
  throw UnknownTheorem(fmt::format("unknown theorem tag '{}'", theorem));
}

double bound_check(RegretReport& report, const std::string& theorem) {
  report.bound_value = bound_value(report, theorem);
  report.bound_margin = report.bound_value - report.static_regret;
  return report.bound_margin;
}

}  // namespace seaoco
