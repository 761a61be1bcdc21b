#pragma once

#include <cstdint>
#include <vector>

#include "seaoco/harness.hpp"

namespace seaoco {

/// Weights 2t / (T (T + 1)) for t = 1..T.
std::vector<double> o2b_weights(int T);

struct O2bResult {
  /// t-weighted average of the iterates.
  Vector x_bar;
  /// Plain average, kept for comparison.
  Vector x_uniform;
  std::vector<Vector> iterates;
  std::vector<double> weights;
  /// F(x) - min F under the (fixed) law; empty when no closed form exists.
  std::optional<double> excess_risk;
  std::optional<double> excess_risk_uniform;
};

/// Runs OFTRL or OMD on losses t * f(., xi_t) against an i.i.d. environment
/// and returns the weighted average of the plays.
O2bResult o2b_accelerated(const EpisodeSpec& spec, int T, std::uint64_t seed, std::uint64_t episode);

/// F(x) - F(x*) for a linear or quadratic family under one law of `env`.
double excess_risk(const Environment& env, const Distribution& law, const Vector& x);

}  // namespace seaoco
