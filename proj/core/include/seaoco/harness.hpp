#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seaoco/environments.hpp"
#include "seaoco/learners.hpp"
#include "seaoco/stats.hpp"

namespace seaoco {

struct FamilySpec {
  std::string kind = "quadratic_tracking";
  double scale = 1.0;
};

struct DomainSpec {
  std::string kind = "ball";
  Vector center;
  double radius = 1.0;
  Vector lo;
  Vector hi;
};

struct EpisodeSpec {
  LearnerSpec learner;
  FamilySpec family;
  DomainSpec domain;
  EnvSpec env;
};

LossFamily make_family(const FamilySpec& spec);
Domain make_domain(const DomainSpec& spec);

struct RoundRecord {
  int t = 0;
  Vector x;
  Sample xi;
  Vector g;
  double step = 0.0;
  double loss = 0.0;
  double sigma_sq = 0.0;
  double Sigma_sq = 0.0;
  /// Point paired with x_t by the learner's optimism.
  std::optional<Vector> y;
  /// grad F_t(x_t).
  Vector mean_grad_x;
  /// argmin F_t when available in closed form.
  std::optional<Vector> u_star;
};

struct Trace {
  std::string learner;
  std::string environment;
  LossFamily family;
  Domain domain;
  std::uint64_t seed = 0;
  std::uint64_t episode = 0;
  std::vector<RoundRecord> rounds;
  VarianceProfile profile;

  int T() const { return static_cast<int>(rounds.size()); }
  double D() const { return domain.diameter(); }
};

/// Runs T rounds of the protocol. Errors are rethrown with the round index.
Trace run_episode(Learner& learner, Environment& env, std::uint64_t seed = 0, std::uint64_t episode = 0);

struct Episode {
  Trace trace;
  std::unique_ptr<Environment> env;
  std::unique_ptr<Learner> learner;
};

/// Builds environment and learner from the spec and runs one episode.
/// `prepare` may configure the learner (recording, loss weights) before round 1.
Episode run_episode(const EpisodeSpec& spec, int T, std::uint64_t seed, std::uint64_t episode,
                    const std::function<void(Learner&)>& prepare = {});

Vector best_fixed_comparator(const Trace& trace);
/// argmin_u sum_t <g_t, u>.
Vector best_linearized_comparator(const Trace& trace);

double regret(const Trace& trace, const Vector& u);
double linearized_regret(const Trace& trace, const Vector& u);
double dynamic_regret(const Trace& trace, const std::vector<Vector>& path);
/// Regret of every prefix 1..t against that prefix's best fixed point.
/// Linear and quadratic families only.
std::vector<double> prefix_regrets(const Trace& trace);
/// The per-round minimizers of F_t recorded in the trace.
std::vector<Vector> optimal_path(const Trace& trace);

struct RegretReport {
  int T = 0;
  double D = 0.0;
  double G = 0.0;
  double L = 0.0;
  double mu = 0.0;
  double static_regret = 0.0;
  double linearized_regret = 0.0;
  std::optional<double> dynamic_regret;
  Vector comparator;
  double bound_value = 0.0;
  double bound_margin = 0.0;
  double sigma_bar = 0.0;
  double Sigma_bar = 0.0;
  double sigma_max = 0.0;
  double Sigma_max = 0.0;
  /// Corruption budget, read by the corruption bound.
  double C = 0.0;
  /// Pool variances, read by the random-order bound.
  double sigma1_sq = 0.0;
  double sigma1_tilde_sq = 0.0;
};

RegretReport make_report(const Trace& trace);

/// Sets report.bound_value and report.bound_margin = bound - observed; returns the margin.
double bound_check(RegretReport& report, const std::string& theorem);
double bound_value(const RegretReport& report, const std::string& theorem);

struct VariationDiagnostics {
  double Var_T = 0.0;
  double D2 = 0.0;
  double sigma_cum = 0.0;
  double Sigma_cum = 0.0;
};

VariationDiagnostics variation_diagnostics(const Trace& trace);

struct PropB6Terms {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const { return rhs - lhs; }
};

/// sum_t ||grad f(x_t, xi_t) - grad f(y_t, xi_{t-1})||^2 against its variance
/// bound. `paired` overrides the recorded y_t when given.
PropB6Terms prop_b6_check(const Trace& trace, const std::vector<std::optional<Vector>>* paired = nullptr);

/// Calls fn(i) for i in [0, n) on up to `threads` workers; results are indexed by i.
std::vector<double> parallel_map(std::size_t n, int threads, const std::function<double(std::size_t)>& fn);

/// Mean regret over seeds 0..n-1 against the best fixed comparator.
Summary expected_regret(const EpisodeSpec& spec, int T, int n_seeds, std::uint64_t seed = 0, int threads = 1);

}  // namespace seaoco
