#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seaoco/errors.hpp"
#include "seaoco/strongly_convex.hpp"

using namespace seaoco;

TEST(OftlSc, CenterFirst) {
  const Domain dom = Domain::ball(Vector::Constant(2, 0.3), 1.0);
  EXPECT_EQ(oftl_sc_step(oftl_sc_init(dom, 1.0), dom), dom.center());
  EXPECT_THROW(oftl_sc_init(dom, 0.0), InvalidArgument);
}

TEST(OftlSc, MatchesSurrogateArgmin) {
  const Domain dom = Domain::ball(Vector::Zero(2), 1.0);
  const double mu = 0.7;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  auto st = oftl_sc_init(dom, mu);
  std::vector<Vector> xs, gs;
  for (int t = 1; t <= 10; ++t) {
    const Vector x = oftl_sc_step(st, dom);
    if (t > 1) {
      // sum_s <g_s, y - x_s> + (mu/2)||y - x_s||^2 + <m, y>, with m the last gradient.
      const auto obj = [&](const Vector& y) {
        double v = gs.back().dot(y);
        for (std::size_t s = 0; s < xs.size(); ++s) v += gs[s].dot(y - xs[s]) + 0.5 * mu * (y - xs[s]).squaredNorm();
        return v;
      };
      const Vector ref = oracle::domain_argmin(obj, dom);
      EXPECT_LE(obj(x), obj(ref) + 1e-10);
      EXPECT_LT((x - ref).norm(), 1e-5);
    }
    Vector g(2);
    g << u(rng), u(rng);
    st = oftl_sc_observe(st, x, g);
    xs.push_back(x);
    gs.push_back(g);
  }
}
