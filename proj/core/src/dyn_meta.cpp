#include "seaoco/dyn_meta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seaoco/errors.hpp"

namespace seaoco {

DynGrid DynGrid::make(double D, double L, int T) {
  if (!(D > 0.0) || !(L > 0.0) || T < 1) throw InvalidArgument("dynamic grid: need D > 0, L > 0, T >= 1");
  DynGrid g;
  g.K = std::max(1, static_cast<int>(std::ceil(std::log2(D * T))));
  for (int i = 1; i <= g.K; ++i) g.etas.push_back(std::ldexp(1.0, i) / (D * L * std::sqrt(T + 1.0)));
  return g;
}

double AdaHedgeState::gamma() const {
  if (gap_cumsum <= 0.0) return kInfinity;
  return std::log(static_cast<double>(K)) / gap_cumsum;
}

AdaHedgeState adahedge_init(int K) {
  if (K < 1) throw InvalidArgument("adahedge: K must be >= 1");
  AdaHedgeState s;
  s.K = K;
  s.cum_loss = Vector::Zero(K);
  return s;
}

Vector dyn_meta_weights(const AdaHedgeState& state, const Vector& M) {
  if (M.size() != state.K) throw DimensionMismatch("dyn_meta_weights");
  const Vector score = M + state.cum_loss;
  const double lo = score.minCoeff();
  const double g = state.gamma();
  Vector P(state.K);
  if (std::isinf(g)) {
    for (int k = 0; k < state.K; ++k) P[k] = score[k] == lo ? 1.0 : 0.0;
  } else {
    P = (-g * (score.array() - lo)).exp();
  }
  return P / P.sum();
}

double adahedge_gap(const Vector& P_s, const Vector& v, double gamma) {
  const auto K = P_s.size();
  if (v.size() != K) throw DimensionMismatch("adahedge_gap");
  if (!(gamma > 0.0)) throw InvalidArgument("adahedge_gap: gamma must be > 0");
  Eigen::Index jmin = 0;
  const double vmin = v.minCoeff(&jmin);
  // Donors in order of decreasing v; each unit of mass moved to jmin gains v_j - vmin.
  std::vector<Eigen::Index> order;
  for (Eigen::Index j = 0; j < K; ++j) {
    if (j != jmin && P_s[j] > 0.0 && v[j] > vmin) order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] > v[b]; });

  if (std::isinf(gamma)) {
    double gain = 0.0;
    for (auto j : order) gain += P_s[j] * (v[j] - vmin);
    return gain;
  }
  // Objective in the moved mass m: gain(m) - m^2 / gamma, concave piecewise.
  double best = 0.0;
  double m0 = 0.0;
  double gain0 = 0.0;
  for (auto j : order) {
    const double slope = v[j] - vmin;
    const double m1 = m0 + P_s[j];
    const double stat = std::clamp(0.5 * slope * gamma, m0, m1);
    for (double m : {stat, m1}) {
      const double val = gain0 + slope * (m - m0) - m * m / gamma;
      best = std::max(best, val);
    }
    gain0 += slope * P_s[j];
    m0 = m1;
  }
  return best;
}

double adahedge_observe(AdaHedgeState& state, const Vector& P, const Vector& L, const Vector& M) {
  const double gap = adahedge_gap(P, L - M, state.gamma());
  state.gap_cumsum += gap;
  state.cum_loss += L;
  return gap;
}

DynWorker dyn_worker_init(double eta, const Domain& domain) {
  if (!(eta > 0.0)) throw InvalidArgument("dyn worker: eta must be > 0");
  DynWorker w;
  w.eta = eta;
  w.w = domain.center();
  w.w_hat = domain.center();
  return w;
}

void dyn_worker_play(DynWorker& worker, const Domain& domain, const Vector& m) {
  worker.w = prox_step(domain, m, 1.0 / worker.eta, worker.w_hat);
}

void dyn_worker_update(DynWorker& worker, const Domain& domain, const Vector& ell) {
  worker.w_hat = prox_step(domain, ell, 1.0 / worker.eta, worker.w_hat);
}

double path_length(const std::vector<Vector>& comparators) {
  if (comparators.empty()) throw InvalidArgument("path_length: empty sequence");
  double p = 0.0;
  for (std::size_t t = 1; t < comparators.size(); ++t) p += (comparators[t] - comparators[t - 1]).norm();
  return p;
}

}  // namespace seaoco
