#include <cmath>

#include <gtest/gtest.h>

#include "seaoco/conversions.hpp"
#include "seaoco/errors.hpp"

using namespace seaoco;

namespace {

EpisodeSpec iid_spec(const std::string& learner, double sigma) {
  EpisodeSpec s;
  s.learner.kind = learner;
  s.domain.center = Vector::Zero(2);
  s.env.kind = "iid";
  s.env.mean = Vector(2);
  s.env.mean << 0.3, -0.2;
  s.env.sigma = sigma;
  return s;
}

}  // namespace

TEST(O2bWeights, SmallHorizon) {
  const auto w = o2b_weights(3);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_DOUBLE_EQ(w[0], 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(w[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(w[2], 0.5);
  EXPECT_THROW(o2b_weights(0), InvalidArgument);
}

TEST(O2bWeights, SumToOne) {
  for (int T : {1, 7, 1000, 123457}) {
    const auto w = o2b_weights(T);
    EXPECT_NEAR(compensated_sum(w), 1.0, 1e-14) << T;
  }
}

TEST(O2b, RequiresIid) {
  EpisodeSpec s = iid_spec("oftrl", 0.1);
  s.env.kind = "drifting";
  EXPECT_THROW(o2b_accelerated(s, 16, 0, 0), ConversionPreconditionViolated);
  EXPECT_THROW(o2b_accelerated(iid_spec("msmwc", 0.1), 16, 0, 0), InvalidArgument);
}

TEST(O2b, AverageOfEqualIterates) {
  // A zero-noise mean at the domain center keeps every play at the center.
  EpisodeSpec s = iid_spec("oftrl", 0.0);
  s.env.mean = Vector::Zero(2);
  const O2bResult r = o2b_accelerated(s, 20, 0, 0);
  for (const auto& x : r.iterates) EXPECT_NEAR(x.norm(), 0.0, 1e-15);
  EXPECT_NEAR(r.x_bar.norm(), 0.0, 1e-15);
  ASSERT_TRUE(r.excess_risk.has_value());
  EXPECT_NEAR(*r.excess_risk, 0.0, 1e-15);
}

TEST(O2b, WeightedAverageMatchesIterates) {
  const O2bResult r = o2b_accelerated(iid_spec("omd", 0.1), 50, 2, 0);
  Vector avg = Vector::Zero(2);
  for (std::size_t i = 0; i < r.iterates.size(); ++i) avg += r.weights[i] * r.iterates[i];
  EXPECT_NEAR((avg - r.x_bar).norm(), 0.0, 1e-12);
  EXPECT_GE(*r.excess_risk, 0.0);
}

TEST(O2b, DeterministicRiskDecays) {
  const double early = *o2b_accelerated(iid_spec("oftrl", 0.0), 32, 0, 0).excess_risk;
  const double late = *o2b_accelerated(iid_spec("oftrl", 0.0), 1024, 0, 0).excess_risk;
  EXPECT_LT(late, early / 100.0);
}
