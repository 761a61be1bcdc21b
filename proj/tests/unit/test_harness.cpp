#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seaoco/errors.hpp"
#include "seaoco/harness.hpp"

using namespace seaoco;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

EpisodeSpec spec_for(const std::string& family, const std::string& env) {
  EpisodeSpec s;
  s.family.kind = family;
  s.domain.center = Vector::Zero(2);
  s.env.kind = env;
  s.env.mean = v2(0.3, -0.2);
  s.env.sigma = 0.3;
  s.env.pattern = "random";
  if (family == "log_smooth") {
    s.env.law = "pool";
    s.env.pool_size = 20;
  }
  return s;
}

// Two-round linear trace on [-1, 1] built by hand.
Trace hand_trace() {
  Trace tr{"hand", "hand", LossFamily::linear().with_constants(1.0, 0.0, 0.0), Domain::interval(-1.0, 1.0), 0, 0, {}, {}};
  const double xs[] = {0.0, 0.5};
  const double pts[] = {1.0, 0.5};
  for (int i = 0; i < 2; ++i) {
    RoundRecord r;
    r.t = i + 1;
    r.x = Vector::Constant(1, xs[i]);
    r.xi.point = Vector::Constant(1, pts[i]);
    r.g = r.xi.point;
    r.loss = xs[i] * pts[i];
    tr.rounds.push_back(r);
  }
  return tr;
}

}  // namespace

TEST(Regret, HandTrace) {
  const Trace tr = hand_trace();
  // Learner loss 0.25; best fixed point -1 loses -1.5.
  const Vector u = best_fixed_comparator(tr);
  EXPECT_DOUBLE_EQ(u[0], -1.0);
  EXPECT_DOUBLE_EQ(regret(tr, u), 1.75);
  EXPECT_DOUBLE_EQ(linearized_regret(tr, u), 1.75);
  const auto pre = prefix_regrets(tr);
  ASSERT_EQ(pre.size(), 2u);
  EXPECT_DOUBLE_EQ(pre[0], 1.0);
  EXPECT_DOUBLE_EQ(pre[1], 1.75);
  EXPECT_THROW(regret(tr, Vector::Constant(1, 1.5)), InfeasibleComparator);
}

TEST(Regret, ZeroWhenComparatorIsPlayed) {
  Trace tr = hand_trace();
  for (auto& r : tr.rounds) {
    r.x = Vector::Constant(1, 0.25);
    r.loss = tr.family.eval(r.x, r.xi);
  }
  EXPECT_NEAR(regret(tr, Vector::Constant(1, 0.25)), 0.0, 1e-15);
  EXPECT_NEAR(dynamic_regret(tr, {Vector::Constant(1, 0.25), Vector::Constant(1, 0.25)}), 0.0, 1e-15);
  EXPECT_THROW(dynamic_regret(tr, {Vector::Constant(1, 0.25)}), DimensionMismatch);
}

class ComparatorOptimality : public ::testing::TestWithParam<std::tuple<std::string, std::string>> {};

TEST_P(ComparatorOptimality, NoPointHasLowerLoss) {
  const auto& [family, env] = GetParam();
  const Episode ep = run_episode(spec_for(family, env), 100, 3, 0);
  const Vector u = best_fixed_comparator(ep.trace);
  const double r_u = regret(ep.trace, u);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  int tried = 0;
  while (tried < 100) {
    const Vector p = v2(c(rng), c(rng));
    if (!ep.trace.domain.contains(p)) continue;
    ++tried;
    EXPECT_LE(regret(ep.trace, p), r_u + 1e-8);
  }
  for (const Vector& p : ep.trace.domain.extreme_points()) EXPECT_LE(regret(ep.trace, p), r_u + 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Families, ComparatorOptimality,
                         ::testing::Combine(::testing::Values("quadratic_tracking", "linear", "log_smooth"),
                                            ::testing::Values("iid", "adversarial_seq")));

TEST(Regret, PrefixRegretsEndAtFullRegret) {
  for (const char* fam : {"quadratic_tracking", "linear"}) {
    const Episode ep = run_episode(spec_for(fam, "iid"), 200, 1, 0);
    const auto pre = prefix_regrets(ep.trace);
    EXPECT_NEAR(pre.back(), regret(ep.trace, best_fixed_comparator(ep.trace)), 1e-9) << fam;
  }
  EXPECT_THROW(prefix_regrets(run_episode(spec_for("log_smooth", "iid"), 5, 0, 0).trace), InvalidArgument);
}

TEST(Regret, OptimalPathForQuadratics) {
  EpisodeSpec s = spec_for("quadratic_tracking", "drifting");
  s.env.sigma = 0.0;
  const Episode ep = run_episode(s, 50, 0, 0);
  const auto path = optimal_path(ep.trace);
  // Noise-free rounds: each minimizer loses nothing.
  EXPECT_NEAR(dynamic_regret(ep.trace, path), compensated_sum([&] {
                std::vector<double> l;
                for (const auto& r : ep.trace.rounds) l.push_back(r.loss);
                return l;
              }()),
              1e-9);
}

TEST(Bounds, Formulas) {
  RegretReport r;
  r.T = 100;
  r.D = 2.0;
  r.G = 1.0;
  r.L = 1.0;
  r.mu = 1.0;
  r.sigma_bar = 0.5;
  r.Sigma_bar = 0.25;
  r.sigma_max = 0.5;
  r.Sigma_max = 1.0;
  r.static_regret = 10.0;
  const double s2 = std::sqrt(2.0);
  EXPECT_NEAR(bound_value(r, "thm1"), (27 + 6 * s2) * 4 + (2 + 4 * s2) * 2 * 0.75 * 10, 1e-12);
  EXPECT_EQ(bound_value(r, "thm2"), bound_value(r, "thm1"));
  EXPECT_NEAR(bound_value(r, "worst_case"), (2 * s2 + 4) * 2 * 10, 1e-12);
  EXPECT_NEAR(bound_value(r, "thm4"), (8 * 0.25 + 4) * std::log(100.0) + 16 * std::log(17.0), 1e-12);
  EXPECT_NEAR(bound_value(r, "msmwc"), 64 * (0.25 + 1 + 4) * std::pow(std::log(200.0), 2) + 256, 1e-9);
  r.C = 25.0;
  EXPECT_NEAR(bound_value(r, "corollary_corrupt"), (27 + 6 * s2) * 4 + (2 + 4 * s2) * 2 * (0.5 + 1.0) * 10, 1e-12);
  const double margin = bound_check(r, "thm1");
  EXPECT_DOUBLE_EQ(margin, r.bound_value - 10.0);
  EXPECT_THROW(bound_value(r, "thm9"), UnknownTheorem);
  r.mu = 0.0;
  EXPECT_THROW(bound_value(r, "thm4"), InvalidArgument);
}

TEST(Bounds, RandomOrder) {
  RegretReport r;
  r.T = 64;
  r.D = 2.0;
  r.G = 2.0;
  r.L = 1.0;
  r.sigma1_sq = 0.04;
  r.sigma1_tilde_sq = 0.04;
  const double s2 = std::sqrt(2.0);
  const double sb = std::sqrt(0.04 * std::log(2.0 * std::exp(2.0)));
  const double Sb = std::sqrt(8.0 * 4.0 / 64.0);
  EXPECT_NEAR(bound_value(r, "corollary_rom"), (27 + 6 * s2) * 4 + (2 + 4 * s2) * 2 * (sb + Sb) * 8, 1e-12);
}

TEST(Diagnostics, AffineFamiliesAreExact) {
  const Episode ep = run_episode(spec_for("quadratic_tracking", "iid"), 64, 2, 0);
  const VariationDiagnostics v = variation_diagnostics(ep.trace);
  Vector mean = Vector::Zero(2);
  for (const auto& r : ep.trace.rounds) mean += r.xi.point;
  mean /= 64.0;
  double var = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < 64; ++i) {
    var += (ep.trace.rounds[i].xi.point - mean).squaredNorm();
    if (i) d2 += (ep.trace.rounds[i].xi.point - ep.trace.rounds[i - 1].xi.point).squaredNorm();
  }
  EXPECT_NEAR(v.Var_T, var, 1e-10);
  EXPECT_NEAR(v.D2, d2, 1e-10);
  EXPECT_GT(v.sigma_cum, 0.0);
}

TEST(Diagnostics, GridPathIsNonNegative) {
  const Episode ep = run_episode(spec_for("log_smooth", "iid"), 16, 0, 0);
  const VariationDiagnostics v = variation_diagnostics(ep.trace);
  EXPECT_GE(v.Var_T, 0.0);
  EXPECT_GE(v.D2, 0.0);
}

TEST(GradientDeviation, HoldsOnOneEpisode) {
  for (const char* learner : {"oftrl", "omd"}) {
    EpisodeSpec s = spec_for("quadratic_tracking", "iid");
    s.learner.kind = learner;
    const Episode ep = run_episode(s, 256, 4, 0);
    const PropB6Terms p = prop_b6_check(ep.trace);
    EXPECT_GT(p.lhs, 0.0);
    EXPECT_GE(p.residual(), 0.0) << learner;
  }
}

TEST(GradientDeviation, PairedSizeChecked) {
  const Episode ep = run_episode(spec_for("quadratic_tracking", "iid"), 8, 0, 0);
  std::vector<std::optional<Vector>> paired(3);
  EXPECT_THROW(prop_b6_check(ep.trace, &paired), DimensionMismatch);
}

TEST(Parallel, MatchesSerialOrder) {
  const auto f = [](std::size_t i) { return std::sqrt(static_cast<double>(i)); };
  EXPECT_EQ(parallel_map(57, 1, f), parallel_map(57, 4, f));
  EXPECT_THROW(parallel_map(10, 3, [](std::size_t i) -> double {
                 if (i == 7) throw InvalidArgument("boom");
                 return 0.0;
               }),
               InvalidArgument);
}

TEST(Parallel, ExpectedRegretIsThreadIndependent) {
  const EpisodeSpec s = spec_for("quadratic_tracking", "iid");
  const Summary a = expected_regret(s, 64, 6, 0, 1);
  const Summary b = expected_regret(s, 64, 6, 0, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Parallel, DeterministicEnvironmentHasNoSpread) {
  EpisodeSpec s = spec_for("quadratic_tracking", "iid");
  s.env.sigma = 0.0;
  EXPECT_EQ(expected_regret(s, 32, 4).std_error, 0.0);
}

TEST(Episode, ErrorsCarryTheRound) {
  EpisodeSpec s = spec_for("quadratic_tracking", "iid");
  s.env.mean = v2(NAN, 0.0);
  try {
    run_episode(s, 4, 0, 0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    SUCCEED() << e.what();
  }
}

TEST(Episode, RecordsMatchTheLoss) {
  const Episode ep = run_episode(spec_for("quadratic_tracking", "iid"), 20, 0, 0);
  for (const auto& r : ep.trace.rounds) {
    EXPECT_NEAR(r.loss, ep.trace.family.eval(r.x, r.xi), 1e-15);
    EXPECT_LT((r.g - oracle::fd_grad([&](const Vector& x) { return ep.trace.family.eval(x, r.xi); }, r.x)).norm(),
              1e-6);
  }
}
