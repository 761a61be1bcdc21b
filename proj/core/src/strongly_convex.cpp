#include "seaoco/strongly_convex.hpp"

#include <cmath>

#include "seaoco/errors.hpp"

namespace seaoco {

OftlScState oftl_sc_init(const Domain& domain, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("oftl_sc: mu must be > 0");
  OftlScState s;
  s.mu = mu;
  s.grad_sum = Vector::Zero(domain.dimension());
  s.anchor_sum = Vector::Zero(domain.dimension());
  s.last_grad = Vector::Zero(domain.dimension());
  s.x_prev = domain.center();
  return s;
}

Vector oftl_sc_step(const OftlScState& state, const Domain& domain) {
  if (state.t == 1) return domain.center();
  const double n = static_cast<double>(state.t - 1);
  return project(domain, (state.mu * state.anchor_sum - state.grad_sum - state.last_grad) / (state.mu * n));
}

OftlScState oftl_sc_observe(OftlScState state, const Vector& x, const Vector& g) {
  if (x.size() != state.grad_sum.size() || g.size() != state.grad_sum.size()) {
    throw DimensionMismatch("oftl_sc_observe: dimension");
  }
  if (!x.allFinite() || !g.allFinite()) throw NonFiniteInput("oftl_sc_observe");
  state.grad_sum += g;
  state.anchor_sum += x;
  state.last_grad = g;
  state.x_prev = x;
  ++state.t;
  return state;
}

}  // namespace seaoco
