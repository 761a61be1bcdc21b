#pragma once

#include <vector>

#include "seaoco/geometry.hpp"

namespace seaoco {

struct DynGrid {
  int K = 0;
  /// eta_i = 2^i / (D L sqrt(T + 1)) for i = 1..K, K = ceil(log2(D T)).
  std::vector<double> etas;

  static DynGrid make(double D, double L, int T);
};

struct AdaHedgeState {
  int K = 0;
  double gap_cumsum = 0.0;
  Vector cum_loss;

  double gamma() const;
};

AdaHedgeState adahedge_init(int K);

/// P_k proportional to exp(-gamma (M_k + cum_loss_k)) with a uniform prior. An
/// infinite gamma gives the uniform law over the minimizers.
Vector dyn_meta_weights(const AdaHedgeState& state, const Vector& M);

/// max over the simplex of <P_s - P, v> - ||P_s - P||_1^2 / (4 gamma).
double adahedge_gap(const Vector& P_s, const Vector& v, double gamma);

/// Accumulates the round's loss vector and mixability gap; returns the gap.
double adahedge_observe(AdaHedgeState& state, const Vector& P, const Vector& L, const Vector& M);

struct DynWorker {
  double eta = 0.0;
  Vector w;
  Vector w_hat;
};

DynWorker dyn_worker_init(double eta, const Domain& domain);
/// w_t = argmin <m, w> + ||w - w_hat||^2 / (2 eta).
void dyn_worker_play(DynWorker& worker, const Domain& domain, const Vector& m);
/// w_hat_{t+1} = argmin <ell, w> + ||w - w_hat||^2 / (2 eta).
void dyn_worker_update(DynWorker& worker, const Domain& domain, const Vector& ell);

/// sum_t ||u_t - u_{t-1}|| with u_0 = u_1.
double path_length(const std::vector<Vector>& comparators);

}  // namespace seaoco
