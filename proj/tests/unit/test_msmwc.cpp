#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seaoco/errors.hpp"
#include "seaoco/harness.hpp"
#include "seaoco/msmwc.hpp"

using namespace seaoco;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector random_simplex(std::mt19937_64& rng, int K) {
  std::exponential_distribution<double> e(1.0);
  Vector p(K);
  for (int k = 0; k < K; ++k) p[k] = e(rng) + 1e-3;
  return p / p.sum();
}

}  // namespace

TEST(MsmwcGrid, Formula) {
  const auto g = MsmwcGrid::make(2.0, 1.5, 1024);
  EXPECT_EQ(g.K, 12);
  for (int i = 1; i <= g.K; ++i) EXPECT_DOUBLE_EQ(g.etas[i - 1], 1.0 / (2.0 * 1.5 * std::ldexp(1.0, i + 8)));
  // First rate is admissible: eta_1 <= 1 / (2^9 D G).
  EXPECT_LE(g.etas[0], 1.0 / (512.0 * 3.0) * (1 + 1e-15));
  EXPECT_THROW(MsmwcGrid::make(2.0, 0.0, 10), InvalidArgument);
}

TEST(WeightedEntropy, MatchesPairwiseOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> le(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const int K = 2 + i % 4;
    Vector eta(K), l(K);
    for (int k = 0; k < K; ++k) {
      eta[k] = std::pow(10.0, le(rng));
      l[k] = u(rng);
    }
    const Vector a = random_simplex(rng, K);
    const Vector ours = weighted_entropy_argmin(eta, l, a);
    const Vector ref = oracle::entropy_argmin_pairwise(eta, l, a);
    EXPECT_NEAR(ours.sum(), 1.0, 1e-12);
    EXPECT_LT((ours - ref).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(WeightedEntropy, TwoExpertGrid) {
  Vector eta = v2(0.5, 2.0);
  Vector l = v2(0.3, -0.1);
  Vector a = v2(0.4, 0.6);
  const auto obj = [&](double p) {
    const Vector P = v2(p, 1.0 - p);
    double v = l.dot(P);
    for (int k = 0; k < 2; ++k) v += (P[k] * std::log(P[k] / a[k]) - P[k] + a[k]) / eta[k];
    return v;
  };
  double best_p = 0.0, best = INFINITY;
  for (int i = 1; i < 10000; ++i) {
    const double p = i * 1e-4;
    if (obj(p) < best) {
      best = obj(p);
      best_p = p;
    }
  }
  EXPECT_NEAR(weighted_entropy_argmin(eta, l, a)[0], best_p, 1e-4);
}

TEST(WeightedEntropy, ZeroLossKeepsAnchor) {
  const Vector a = v2(0.25, 0.75);
  const Vector P = weighted_entropy_argmin(v2(1.0, 3.0), Vector::Zero(2), a);
  EXPECT_NEAR((P - a).norm(), 0.0, 1e-12);
}

TEST(WeightedEntropy, Errors) {
  EXPECT_THROW(weighted_entropy_argmin(v2(1, 1), Vector::Zero(3), v2(0.5, 0.5)), DimensionMismatch);
  EXPECT_THROW(weighted_entropy_argmin(v2(1, -1), Vector::Zero(2), v2(0.5, 0.5)), InvalidArgument);
  EXPECT_THROW(weighted_entropy_argmin(v2(1, 1), v2(NAN, 0), v2(0.5, 0.5)), NonFiniteInput);
}

TEST(Msmwc, SingleWorkerIsTheWorker) {
  const Domain dom = Domain::ball(Vector::Zero(2), 1.0);
  MsmwcGrid g;
  g.K = 1;
  g.etas = {0.01};
  auto meta = msmwc_meta_init(g);
  std::vector<MsmwcWorker> ws{msmwc_worker_init(0.01, 1.0, dom)};
  ws[0].w = v2(0.3, 0.2);
  const Vector W = msmwc_meta_play(meta, ws, v2(1.0, -1.0));
  EXPECT_NEAR((W - ws[0].w).norm(), 0.0, 1e-15);
}

TEST(Msmwc, CoincidentWorkers) {
  const Domain dom = Domain::ball(Vector::Zero(2), 1.0);
  const auto g = MsmwcGrid::make(2.0, 1.0, 64);
  auto meta = msmwc_meta_init(g);
  std::vector<MsmwcWorker> ws;
  for (double e : g.etas) {
    ws.push_back(msmwc_worker_init(e, 1.0, dom));
    ws.back().w = v2(-0.2, 0.4);
  }
  EXPECT_NEAR((msmwc_meta_play(meta, ws, v2(0.5, 0.5)) - v2(-0.2, 0.4)).norm(), 0.0, 1e-14);
}

TEST(Msmwc, SurrogateGradient) {
  MsmwcWorker w;
  w.eta = 0.01;
  w.w = v2(0.5, 0.0);
  const Vector m = v2(0.0, 1.0);
  const Vector ell = v2(1.0, 1.0);
  const Vector W = v2(0.0, 0.0);
  const Vector expect = ell + 128.0 * 0.01 * 1.0 * v2(0.5, 0.0);
  EXPECT_NEAR((msmwc_surrogate_grad(w, m, ell, W) - expect).norm(), 0.0, 1e-15);
  // No deviation: the surrogate is linear.
  EXPECT_EQ(msmwc_surrogate_grad(w, ell, ell, W), ell);
}

TEST(Msmwc, WorkerUpdateMatchesOracle) {
  const Domain dom = Domain::interval(-1.0, 1.0);
  MsmwcWorker w = msmwc_worker_init(0.05, 1.0, dom);
  const Vector m = Vector::Constant(1, 0.3);
  msmwc_worker_play(w, dom, m);
  const Vector ell = Vector::Constant(1, -0.8);
  const Vector W = Vector::Constant(1, 0.1);
  const Vector gc = msmwc_surrogate_grad(w, m, ell, W);
  const Vector hat = w.w_hat;
  const double A = w.A;
  msmwc_worker_update(w, dom, m, ell, W);
  const auto obj = [&](const Vector& z) { return z.dot(gc) + 0.5 * A * (z - hat).squaredNorm(); };
  EXPECT_NEAR(w.w_hat[0], oracle::domain_argmin(obj, dom)[0], 1e-8);
  EXPECT_NEAR(w.A, A + 0.05 * (gc - m).squaredNorm(), 1e-15);
}

TEST(Msmwc, MetaDecompositionAndAdmissibility) {
  EpisodeSpec spec;
  spec.learner.kind = "msmwc";
  spec.domain.center = Vector::Zero(2);
  spec.env.kind = "iid";
  spec.env.mean = v2(0.3, -0.2);
  spec.env.sigma = 0.3;
  const Episode ep = run_episode(spec, 300, 1, 0, [](Learner& l) {
    static_cast<MsmwcLearner&>(l).set_recording(true);
  });
  const auto& lr = static_cast<const MsmwcLearner&>(*ep.learner);
  const Vector u = best_fixed_comparator(ep.trace);
  for (int k = 0; k < lr.grid().K; ++k) {
    double total = 0.0, meta = 0.0, worker = 0.0;
    for (const auto& r : lr.records()) {
      total += r.ell.dot(r.W - u);
      meta += r.P.dot(r.L) - r.L[k];
      worker += r.ell.dot(r.w[static_cast<std::size_t>(k)] - u);
    }
    EXPECT_NEAR(total, meta + worker, 1e-9);
  }
  for (const auto& r : lr.records()) EXPECT_LE(r.admissibility, 1.0);
  for (const auto& rr : ep.trace.rounds) EXPECT_TRUE(ep.trace.domain.contains(rr.x, 1e-12));
}
