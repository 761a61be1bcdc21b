#pragma once

#include "seaoco/geometry.hpp"

namespace seaoco {

/// delta = min(eta * dev^2 / 2, D * dev); the first branch vanishes from the
/// min when eta is infinite.
double delta_of(double eta, double dev_norm, double D);

/// Self-tuned step size eta_t = D^2 / sum_{s<t} delta_s, infinite while the sum is empty.
struct AdaptiveStep {
  double D = 0.0;
  double delta_cumsum = 0.0;

  double eta() const { return delta_cumsum > 0.0 ? D * D / delta_cumsum : kInfinity; }
  /// Adds delta_of(eta(), dev_norm, D) and returns it.
  double observe(double dev_norm);
};

struct OftrlState {
  AdaptiveStep step;
  Vector grad_accum;
  Vector last_grad;
  int t = 1;
};

OftrlState oftrl_init(const Domain& domain);
/// x_t = argmin <x, m_t + sum g> + ||x||^2 / (2 eta_t), with m_t the last gradient.
Vector oftrl_step(const OftrlState& state, const Domain& domain);
OftrlState oftrl_observe(OftrlState state, const Vector& g);

struct OmdState {
  AdaptiveStep step;
  Vector y;
  Vector x;
  Vector last_m;
  int t = 1;
};

OmdState omd_init(const Domain& domain);
/// Optimistic step from y_t against m_t; records x_t in the returned state.
OmdState omd_step(OmdState state, const Domain& domain, const Vector& m);
/// y_{t+1} = argmin <y, ell_t> + ||y - y_t||^2 / (2 eta_t), then the step size update.
OmdState omd_observe(OmdState state, const Domain& domain, const Vector& ell);

}  // namespace seaoco
