#pragma once

#include <vector>

#include "seaoco/geometry.hpp"

namespace seaoco {

struct MsmwcGrid {
  int K = 0;
  /// eta_i = 1 / (D G 2^(i + 8)) for i = 1..K, K = ceil(log2(2 D T)).
  std::vector<double> etas;

  static MsmwcGrid make(double D, double G, int T);
};

/// argmin over the simplex of <linear, P> + D_phi(P, anchor) for the weighted
/// negative entropy phi(P) = sum_k P_k log(P_k) / eta_k.
Vector weighted_entropy_argmin(const Vector& etas, const Vector& linear, const Vector& anchor);

struct MsmwcMeta {
  Vector etas;
  Vector P_hat;
  Vector P;
  Vector M;
};

struct MsmwcWorker {
  double eta = 0.0;
  Vector w;
  Vector w_hat;
  /// Weight of the quadratic regularizer, eta (8 G^2 + sum_{s<t} ||grad c_s - m_s||^2).
  double A = 0.0;
};

MsmwcMeta msmwc_meta_init(const MsmwcGrid& grid);
MsmwcWorker msmwc_worker_init(double eta, double G, const Domain& domain);

/// w_t = argmin <m, w> + (A / 2) ||w - w_hat||^2.
void msmwc_worker_play(MsmwcWorker& worker, const Domain& domain, const Vector& m);

/// P_t from the optimistic losses M_{t,k} = <m, w_k>; returns W_t = sum_k P_k w_k.
Vector msmwc_meta_play(MsmwcMeta& meta, const std::vector<MsmwcWorker>& workers, const Vector& m);

struct MsmwcRoundInfo {
  Vector L;
  Vector L_hat;
  /// max_k 32 eta_k |L_k - M_k - <P, L - M>|.
  double admissibility = 0.0;
};

/// P_hat_{t+1} from L_t + L_hat_t.
MsmwcRoundInfo msmwc_meta_update(MsmwcMeta& meta, const std::vector<MsmwcWorker>& workers, const Vector& ell);

/// Surrogate gradient ell + 2^7 eta ||ell - m||^2 (w - W).
Vector msmwc_surrogate_grad(const MsmwcWorker& worker, const Vector& m, const Vector& ell, const Vector& W);

void msmwc_worker_update(MsmwcWorker& worker, const Domain& domain, const Vector& m, const Vector& ell,
                         const Vector& W);

}  // namespace seaoco
