#pragma once

#include "seaoco/geometry.hpp"

namespace seaoco {

/// Optimistic follow-the-leader on the surrogates
/// l_s(x) = <g_s, x - x_s> + (mu / 2) ||x - x_s||^2.
struct OftlScState {
  double mu = 0.0;
  Vector grad_sum;
  Vector anchor_sum;
  Vector last_grad;
  Vector x_prev;
  int t = 1;
};

OftlScState oftl_sc_init(const Domain& domain, double mu);
/// Center at t = 1, else project((mu sum x_s - sum g_s - m_t) / (mu (t - 1))).
Vector oftl_sc_step(const OftlScState& state, const Domain& domain);
OftlScState oftl_sc_observe(OftlScState state, const Vector& x, const Vector& g);

}  // namespace seaoco
