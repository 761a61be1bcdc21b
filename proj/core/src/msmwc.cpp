#include "seaoco/msmwc.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "seaoco/errors.hpp"

namespace seaoco {
namespace {

constexpr double kFloor = 1e-300;

double log_sum_exp(const Vector& v) {
  const double m = v.maxCoeff();
  if (std::isinf(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

MsmwcGrid MsmwcGrid::make(double D, double G, int T) {
  if (!(D > 0.0) || !(G > 0.0) || T < 1) throw InvalidArgument("msmwc grid: need D > 0, G > 0, T >= 1");
  MsmwcGrid g;
  g.K = std::max(1, static_cast<int>(std::ceil(std::log2(2.0 * D * T))));
  for (int i = 1; i <= g.K; ++i) g.etas.push_back(1.0 / (D * G * std::ldexp(1.0, i + 8)));
  return g;
}

Vector weighted_entropy_argmin(const Vector& etas, const Vector& linear, const Vector& anchor) {
  const auto K = etas.size();
  if (K == 0 || linear.size() != K || anchor.size() != K) throw DimensionMismatch("weighted_entropy_argmin");
  if (!linear.allFinite() || !anchor.allFinite() || !etas.allFinite()) throw NonFiniteInput("weighted_entropy_argmin");
  if ((etas.array() <= 0.0).any()) throw InvalidArgument("weighted_entropy_argmin: weights must be > 0");
  if ((anchor.array() <= 0.0).any()) throw InvalidArgument("weighted_entropy_argmin: anchor must be positive");

  const Vector log_anchor = anchor.array().max(kFloor).log();
  // log P_k(lambda) = log anchor_k - eta_k (linear_k + lambda); h(lambda) = log sum P_k is decreasing.
  auto logp = [&](double lambda) -> Vector {
    return log_anchor.array() - etas.array() * (linear.array() + lambda);
  };
  auto h = [&](double lambda) { return log_sum_exp(logp(lambda)); };

  double lo = -linear.maxCoeff();
  double hi = -linear.minCoeff();
  // Anchor mass may be below 1 after flooring, so widen if needed.
  double width = std::max(1.0, hi - lo);
  int expansions = 0;
  while (h(lo) < 0.0) {
    lo -= width;
    width *= 2.0;
    if (++expansions > 200) throw SolverDivergence("weighted_entropy_argmin: could not bracket the multiplier");
  }
  width = std::max(1.0, hi - lo);
  while (h(hi) > 0.0) {
    hi += width;
    width *= 2.0;
    if (++expansions > 200) throw SolverDivergence("weighted_entropy_argmin: could not bracket the multiplier");
  }
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  const Vector lp = logp(0.5 * (lo + hi));
  Vector P = (lp.array() - log_sum_exp(lp)).exp().max(kFloor);
  return P / P.sum();
}

MsmwcMeta msmwc_meta_init(const MsmwcGrid& grid) {
  MsmwcMeta meta;
  meta.etas = Eigen::Map<const Vector>(grid.etas.data(), static_cast<Eigen::Index>(grid.etas.size()));
  meta.P_hat = meta.etas.array().square();
  meta.P_hat /= meta.P_hat.sum();
  meta.P = meta.P_hat;
  meta.M = Vector::Zero(grid.K);
  return meta;
}

MsmwcWorker msmwc_worker_init(double eta, double G, const Domain& domain) {
  MsmwcWorker w;
  w.eta = eta;
  w.w_hat = domain.center();
  w.w = domain.center();
  w.A = eta * 8.0 * G * G;
  if (!(w.A > 0.0)) throw InvalidArgument("msmwc worker: A_1 must be > 0");
  return w;
}

void msmwc_worker_play(MsmwcWorker& worker, const Domain& domain, const Vector& m) {
  worker.w = prox_step(domain, m, worker.A, worker.w_hat);
}

Vector msmwc_meta_play(MsmwcMeta& meta, const std::vector<MsmwcWorker>& workers, const Vector& m) {
  const auto K = static_cast<Eigen::Index>(workers.size());
  if (K != meta.etas.size()) throw DimensionMismatch("msmwc_meta_play: worker count");
  for (Eigen::Index k = 0; k < K; ++k) meta.M[k] = m.dot(workers[static_cast<std::size_t>(k)].w);
  meta.P = weighted_entropy_argmin(meta.etas, meta.M, meta.P_hat);
  Vector W = Vector::Zero(m.size());
  for (Eigen::Index k = 0; k < K; ++k) W += meta.P[k] * workers[static_cast<std::size_t>(k)].w;
  return W;
}

MsmwcRoundInfo msmwc_meta_update(MsmwcMeta& meta, const std::vector<MsmwcWorker>& workers, const Vector& ell) {
  const auto K = meta.etas.size();
  MsmwcRoundInfo info;
  info.L.resize(K);
  for (Eigen::Index k = 0; k < K; ++k) info.L[k] = workers[static_cast<std::size_t>(k)].w.dot(ell);
  const Vector dev = info.L - meta.M;
  const double avg = meta.P.dot(dev);
  info.L_hat.resize(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double r = dev[k] - avg;
    info.L_hat[k] = 32.0 * meta.etas[k] * r * r;
    info.admissibility = std::max(info.admissibility, 32.0 * meta.etas[k] * std::abs(r));
  }
  meta.P_hat = weighted_entropy_argmin(meta.etas, info.L + info.L_hat, meta.P_hat);
  return info;
}

Vector msmwc_surrogate_grad(const MsmwcWorker& worker, const Vector& m, const Vector& ell, const Vector& W) {
  return ell + 128.0 * worker.eta * (ell - m).squaredNorm() * (worker.w - W);
}

void msmwc_worker_update(MsmwcWorker& worker, const Domain& domain, const Vector& m, const Vector& ell,
                         const Vector& W) {
  const Vector gc = msmwc_surrogate_grad(worker, m, ell, W);
  worker.w_hat = prox_step(domain, gc, worker.A, worker.w_hat);
  worker.A += worker.eta * (gc - m).squaredNorm();
}

}  // namespace seaoco
