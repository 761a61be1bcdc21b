#include "seaoco/conversions.hpp"

#include <fmt/format.h>

#include "seaoco/errors.hpp"
#include "seaoco/stats.hpp"

namespace seaoco {

std::vector<double> o2b_weights(int T) {
  if (T < 1) throw InvalidArgument("o2b: horizon must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(T));
  const double norm = static_cast<double>(T) * (T + 1);
  for (int t = 1; t <= T; ++t) w[static_cast<std::size_t>(t - 1)] = 2.0 * t / norm;
  return w;
}

double excess_risk(const Environment& env, const Distribution& law, const Vector& x) {
  const LossFamily& fam = env.family();
  const Vector x_star = env.mean_minimizer(law);
  switch (fam.kind()) {
    case LossFamily::Kind::QuadraticTracking: {
      // F(x) = (a/2) ||x - c||^2 + const, with c the unconstrained minimizer.
      Vector c = law.mean_point();
      if (law.shift.size()) c -= law.shift / fam.scale();
      return 0.5 * fam.scale() * ((x - c).squaredNorm() - (x_star - c).squaredNorm());
    }
    case LossFamily::Kind::Linear: {
      const Vector g = env.mean_grad(law, x);
      return g.dot(x - x_star);
    }
    default: break;
  }
  throw InvalidArgument(fmt::format("no closed-form risk for {} losses", fam.name()));
}

O2bResult o2b_accelerated(const EpisodeSpec& spec, int T, std::uint64_t seed, std::uint64_t episode) {
  if (spec.learner.kind != "oftrl" && spec.learner.kind != "omd") {
    throw InvalidArgument(fmt::format("o2b: learner must be oftrl or omd, got '{}'", spec.learner.kind));
  }
  auto env = make_environment(spec.env, make_family(spec.family), make_domain(spec.domain), T, seed, episode);
  if (!env->is_iid()) {
    throw ConversionPreconditionViolated(fmt::format("o2b needs an i.i.d. environment, got '{}'", env->kind()));
  }
  auto learner = make_learner(spec.learner, env->family(), env->domain(), T);
  learner->set_loss_weights([](int t) { return static_cast<double>(t); });

  O2bResult out;
  out.weights = o2b_weights(T);
  out.iterates.reserve(static_cast<std::size_t>(T));
  std::optional<Distribution> law;
  for (int t = 1; t <= T; ++t) {
    Vector x = learner->play(t, *env);
    RoundOutcome r = env->step(t, x);
    learner->update(t, r.xi);
    out.iterates.push_back(std::move(x));
    law = std::move(r.law);
  }

  const int d = env->domain().dimension();
  out.x_bar = Vector::Zero(d);
  out.x_uniform = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    CompensatedSum w;
    CompensatedSum u;
    for (std::size_t t = 0; t < out.iterates.size(); ++t) {
      w.add(out.weights[t] * out.iterates[t][i]);
      u.add(out.iterates[t][i]);
    }
    out.x_bar[i] = w.value();
    out.x_uniform[i] = u.value() / T;
  }
  // Rounding can push a convex combination a hair outside the set.
  out.x_bar = project(env->domain(), out.x_bar);
  out.x_uniform = project(env->domain(), out.x_uniform);

  const auto kind = env->family().kind();
  if (kind == LossFamily::Kind::Linear || kind == LossFamily::Kind::QuadraticTracking) {
    out.excess_risk = excess_risk(*env, *law, out.x_bar);
    out.excess_risk_uniform = excess_risk(*env, *law, out.x_uniform);
  }
  return out;
}

}  // namespace seaoco
