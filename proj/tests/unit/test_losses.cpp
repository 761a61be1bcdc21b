#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seaoco/errors.hpp"
#include "seaoco/losses.hpp"

using namespace seaoco;

namespace {

Sample sample(const Vector& p, const Vector& shift = Vector()) {
  Sample s;
  s.point = p;
  s.shift = shift;
  return s;
}

}  // namespace

TEST(Losses, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto fams = {LossFamily::linear(), LossFamily::quadratic_tracking(2.5), LossFamily::log_smooth()};
  for (const auto& fam : fams) {
    for (int i = 0; i < 10; ++i) {
      Vector x(3), p(3), v(3);
      for (int k = 0; k < 3; ++k) {
        x[k] = n(rng);
        p[k] = n(rng);
        v[k] = n(rng);
      }
      const Sample s = sample(p, v);
      const Vector fd = oracle::fd_grad([&](const Vector& y) { return fam.eval(y, s); }, x);
      EXPECT_LT((fam.grad(x, s) - fd).norm(), 1e-6) << fam.name();
    }
  }
}

TEST(Losses, Values) {
  Vector x(2), p(2);
  x << 1.0, 2.0;
  p << 0.5, -1.0;
  EXPECT_DOUBLE_EQ(LossFamily::linear().eval(x, sample(p)), -1.5);
  EXPECT_DOUBLE_EQ(LossFamily::quadratic_tracking(2.0).eval(x, sample(p)), 0.25 + 9.0);
  EXPECT_NEAR(LossFamily::log_smooth().eval(x, sample(p)), std::log1p(std::exp(-1.5)), 1e-15);
}

TEST(Losses, Constants) {
  const auto q = LossFamily::quadratic_tracking(3.0);
  EXPECT_EQ(q.L(), 3.0);
  EXPECT_EQ(q.mu(), 3.0);
  EXPECT_THROW(LossFamily::quadratic_tracking(0.0), InvalidArgument);
  EXPECT_THROW(q.with_constants(1.0, 1.0, 2.0), InvalidArgument);
  EXPECT_EQ(q.with_gradient_bound(4.0).G(), 4.0);
}

TEST(Losses, ShapeErrors) {
  EXPECT_THROW(LossFamily::linear().eval(Vector::Zero(2), sample(Vector::Zero(3))), DimensionMismatch);
  EXPECT_THROW(LossFamily::linear().grad(Vector::Zero(2), sample(Vector::Zero(2), Vector::Zero(1))),
               DimensionMismatch);
}

TEST(Losses, OverflowIsReported) {
  Vector x = Vector::Constant(1, 1e308);
  EXPECT_THROW(LossFamily::quadratic_tracking(10.0).eval(x, sample(Vector::Constant(1, -1e308))), NumericalOverflow);
}

TEST(Losses, SoftplusStable) {
  EXPECT_NEAR(softplus(800.0), 800.0, 1e-12);
  EXPECT_NEAR(softplus(-800.0), 0.0, 1e-300);
  EXPECT_NEAR(sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
}

TEST(Losses, ParseKind) {
  EXPECT_EQ(parse_family_kind("linear"), LossFamily::Kind::Linear);
  EXPECT_EQ(parse_family_kind("quadratic_tracking"), LossFamily::Kind::QuadraticTracking);
  EXPECT_THROW(parse_family_kind("cubic"), InvalidArgument);
}

TEST(Losses, Oracle) {
  auto f = LossFamily::gradient_oracle([](const Vector& x, const Sample& s) { return s.coin * x.squaredNorm(); },
                                       [](const Vector& x, const Sample& s) { return Vector(2.0 * s.coin * x); },
                                       2.0, 0.0);
  Sample s;
  s.coin = -1.0;
  EXPECT_DOUBLE_EQ(f.eval(Vector::Constant(1, 3.0), s), -9.0);
  EXPECT_DOUBLE_EQ(f.grad(Vector::Constant(1, 3.0), s)[0], -6.0);
}
