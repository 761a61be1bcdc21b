#include "seaoco/optimistic.hpp"

#include <algorithm>
#include <cmath>

#include "seaoco/errors.hpp"

namespace seaoco {

double delta_of(double eta, double dev_norm, double D) {
  if (!(dev_norm >= 0.0) || !(D > 0.0) || !(eta > 0.0)) throw InvalidArgument("delta_of: invalid arguments");
  const double lin = D * dev_norm;
  if (std::isinf(eta)) return lin;
  return std::min(0.5 * eta * dev_norm * dev_norm, lin);
}

double AdaptiveStep::observe(double dev_norm) {
  const double d = delta_of(eta(), dev_norm, D);
  delta_cumsum += d;
  return d;
}

OftrlState oftrl_init(const Domain& domain) {
  OftrlState s;
  s.step.D = domain.diameter();
  s.grad_accum = Vector::Zero(domain.dimension());
  s.last_grad = Vector::Zero(domain.dimension());
  return s;
}

Vector oftrl_step(const OftrlState& state, const Domain& domain) {
  const Vector theta = state.last_grad + state.grad_accum;
  const Vector origin = Vector::Zero(domain.dimension());
  // An infinite step with a zero linear term plays the center.
  return regularized_argmin(domain, theta, state.step.eta(), origin, domain.center());
}

OftrlState oftrl_observe(OftrlState state, const Vector& g) {
  if (g.size() != state.grad_accum.size()) throw DimensionMismatch("oftrl_observe: gradient dimension");
  if (!g.allFinite()) throw NonFiniteInput("oftrl_observe: gradient");
  state.step.observe((g - state.last_grad).norm());
  state.grad_accum += g;
  state.last_grad = g;
  ++state.t;
  return state;
}

OmdState omd_init(const Domain& domain) {
  OmdState s;
  s.step.D = domain.diameter();
  s.y = domain.center();
  s.x = domain.center();
  s.last_m = Vector::Zero(domain.dimension());
  return s;
}

OmdState omd_step(OmdState state, const Domain& domain, const Vector& m) {
  if (!m.allFinite()) throw NonFiniteInput("omd_step: optimism");
  state.x = regularized_argmin(domain, m, state.step.eta(), state.y, state.y);
  state.last_m = m;
  return state;
}

OmdState omd_observe(OmdState state, const Domain& domain, const Vector& ell) {
  if (!ell.allFinite()) throw NonFiniteInput("omd_observe: gradient");
  state.y = regularized_argmin(domain, ell, state.step.eta(), state.y, state.y);
  state.step.observe((ell - state.last_m).norm());
  ++state.t;
  return state;
}

}  // namespace seaoco
