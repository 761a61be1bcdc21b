#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seaoco/errors.hpp"
#include "seaoco/optimistic.hpp"

using namespace seaoco;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

std::vector<Vector> random_grads(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vector> g;
  for (int i = 0; i < n; ++i) g.push_back(v2(u(rng), u(rng)));
  return g;
}

}  // namespace

TEST(DeltaOf, Branches) {
  EXPECT_DOUBLE_EQ(delta_of(kInfinity, 0.5, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(delta_of(1.0, 0.5, 2.0), 0.125);
  EXPECT_DOUBLE_EQ(delta_of(100.0, 0.5, 2.0), 1.0);
  EXPECT_THROW(delta_of(1.0, -1.0, 2.0), InvalidArgument);
}

TEST(AdaptiveStep, EtaIsDSquaredOverSum) {
  AdaptiveStep s{2.0};
  EXPECT_TRUE(std::isinf(s.eta()));
  s.observe(0.5);
  EXPECT_DOUBLE_EQ(s.eta(), 4.0);
  s.observe(1.0);
  EXPECT_DOUBLE_EQ(s.eta(), 4.0 / 3.0);
}

TEST(Oftrl, FirstPlayIsCenter) {
  const Domain dom = Domain::box(v2(0.0, 0.0), v2(2.0, 1.0));
  EXPECT_EQ(oftrl_step(oftrl_init(dom), dom), v2(1.0, 0.5));
}

TEST(Oftrl, PlaysMatchObjectiveOracle) {
  const Domain dom = Domain::ball(v2(0.2, 0.1), 1.0);
  auto st = oftrl_init(dom);
  Vector sum = Vector::Zero(2);
  Vector last = Vector::Zero(2);
  for (const Vector& g : random_grads(12, 3)) {
    const Vector x = oftrl_step(st, dom);
    const double eta = st.step.eta();
    const Vector theta = sum + last;
    if (std::isfinite(eta)) {
      const auto obj = [&](const Vector& y) { return y.dot(theta) + y.squaredNorm() / (2.0 * eta); };
      const Vector ref = oracle::domain_argmin(obj, dom);
      EXPECT_LE(obj(x), obj(ref) + 1e-10);
    }
    st = oftrl_observe(st, g);
    sum += g;
    last = g;
  }
}

TEST(Oftrl, StepIdentity) {
  // D^2 / eta_t equals the running sum of delta_s.
  const Domain dom = Domain::ball(Vector::Zero(2), 1.0);
  auto st = oftrl_init(dom);
  double sum = 0.0;
  Vector last = Vector::Zero(2);
  for (const Vector& g : random_grads(30, 9)) {
    oftrl_step(st, dom);
    sum += delta_of(st.step.eta(), (g - last).norm(), 2.0);
    st = oftrl_observe(st, g);
    last = g;
    EXPECT_NEAR(4.0 / st.step.eta(), sum, 1e-12);
  }
}

TEST(Oftrl, LinearizedRegretWithinPerRoundBound) {
  // <sum g, x - u> <= D^2/eta_T + sum <g - m, x_t - x_{t+1}> - ||x_t - x_{t+1}||^2 / (2 eta_t).
  const Domain dom = Domain::ball(Vector::Zero(2), 1.0);
  const auto gs = random_grads(200, 21);
  auto st = oftrl_init(dom);
  std::vector<Vector> xs, ms;
  std::vector<double> etas;
  Vector last = Vector::Zero(2);
  for (const Vector& g : gs) {
    xs.push_back(oftrl_step(st, dom));
    etas.push_back(st.step.eta());
    ms.push_back(last);
    st = oftrl_observe(st, g);
    last = g;
  }
  xs.push_back(oftrl_step(st, dom));
  Vector G = Vector::Zero(2);
  for (const Vector& g : gs) G += g;
  const Vector u = dom.linear_minimizer(G, Vector::Zero(2));
  double lhs = 0.0;
  double rhs = 4.0 / st.step.eta();
  for (std::size_t t = 0; t < gs.size(); ++t) {
    lhs += gs[t].dot(xs[t] - u);
    const Vector dx = xs[t] - xs[t + 1];
    rhs += (gs[t] - ms[t]).dot(dx);
    if (std::isfinite(etas[t])) rhs -= dx.squaredNorm() / (2.0 * etas[t]);
  }
  EXPECT_LE(lhs, rhs + 1e-9);
}

TEST(Omd, StepsMatchOracle) {
  const Domain dom = Domain::box(v2(-1.0, -1.0), v2(1.0, 0.5));
  auto st = omd_init(dom);
  const auto gs = random_grads(10, 5);
  Vector m = Vector::Zero(2);
  for (const Vector& g : gs) {
    const Vector y = st.y;
    st = omd_step(st, dom, m);
    const double eta = st.step.eta();
    if (std::isfinite(eta)) {
      const auto obj = [&](const Vector& z) { return z.dot(m) + (z - y).squaredNorm() / (2.0 * eta); };
      EXPECT_LE(obj(st.x), obj(oracle::domain_argmin(obj, dom)) + 1e-10);
    }
    st = omd_observe(st, dom, g);
    if (std::isfinite(eta)) {
      const auto obj = [&](const Vector& z) { return z.dot(g) + (z - y).squaredNorm() / (2.0 * eta); };
      EXPECT_LE(obj(st.y), obj(oracle::domain_argmin(obj, dom)) + 1e-10);
    }
    m = g;
  }
}

TEST(Omd, ZeroOptimismFirstRoundStaysAtCenter) {
  const Domain dom = Domain::ball(v2(0.5, 0.5), 1.0);
  auto st = omd_step(omd_init(dom), dom, Vector::Zero(2));
  EXPECT_EQ(st.x, dom.center());
  EXPECT_THROW(omd_step(st, dom, v2(NAN, 0)), NonFiniteInput);
}
