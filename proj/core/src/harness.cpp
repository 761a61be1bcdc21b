#include "seaoco/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "seaoco/errors.hpp"

namespace seaoco {
namespace {

template <class E>
[[noreturn]] void rethrow_as(int t, const E& e) {
  throw E(fmt::format("round {}: {}", t, e.what()));
}

// Rethrows the active exception with the round prefixed, keeping its type.
[[noreturn]] void rethrow_with_round(int t) {
  try {
    throw;
  } catch (const DimensionMismatch& e) {
    rethrow_as(t, e);
  } catch (const NonFiniteInput& e) {
    rethrow_as(t, e);
  } catch (const InvalidArgument& e) {
    rethrow_as(t, e);
  } catch (const UnboundedObjective& e) {
    rethrow_as(t, e);
  } catch (const NumericalOverflow& e) {
    rethrow_as(t, e);
  } catch (const ProtocolViolation& e) {
    rethrow_as(t, e);
  } catch (const NoPreviousDistribution& e) {
    rethrow_as(t, e);
  } catch (const SolverDivergence& e) {
    rethrow_as(t, e);
  } catch (const InvalidLowerBoundDomain& e) {
    rethrow_as(t, e);
  } catch (const ConversionPreconditionViolated& e) {
    rethrow_as(t, e);
  } catch (const ComparatorSolveFailure& e) {
    rethrow_as(t, e);
  } catch (const InfeasibleComparator& e) {
    rethrow_as(t, e);
  } catch (const UnknownTheorem& e) {
    rethrow_as(t, e);
  } catch (const Error& e) {
    rethrow_as(t, e);
  }
}

double mean_loss(const Trace& trace, const Vector& u) {
  CompensatedSum s;
  for (const auto& r : trace.rounds) s.add(trace.family.eval(u, r.xi));
  return s.value() / trace.T();
}

Vector mean_loss_grad(const Trace& trace, const Vector& u) {
  Vector g = Vector::Zero(u.size());
  for (const auto& r : trace.rounds) g += trace.family.grad(u, r.xi);
  return g / trace.T();
}

// Projected gradient descent with backtracking on the average loss.
Vector solve_comparator(const Trace& trace) {
  const Domain& dom = trace.domain;
  Vector u = dom.center();
  double fu = mean_loss(trace, u);
  double step = 1.0;
  bool converged = false;
  for (int it = 0; it < 1000000; ++it) {
    const Vector g = mean_loss_grad(trace, u);
    Vector next;
    double fn = 0.0;
    for (int bt = 0; bt < 100; ++bt) {
      next = project(dom, u - step * g);
      fn = mean_loss(trace, next);
      const Vector d = next - u;
      if (fn <= fu + g.dot(d) + d.squaredNorm() / (2.0 * step) + 1e-15) break;
      step *= 0.5;
    }
    const double mapping = (next - u).norm() / step;
    u = next;
    fu = fn;
    if (mapping <= 1e-9) {
      converged = true;
      break;
    }
    step *= 2.0;
  }
  if (!converged) throw ComparatorSolveFailure("comparator solve did not reach tolerance");
  for (const Vector& p : dom.extreme_points()) {
    const double fp = mean_loss(trace, p);
    if (fp < fu) {
      u = p;
      fu = fp;
    }
  }
  return u;
}

void require_feasible(const Trace& trace, const Vector& u) {
  if (!trace.domain.contains(u, 1e-9)) throw InfeasibleComparator("comparator lies outside the domain");
}

}  // namespace

LossFamily make_family(const FamilySpec& spec) {
  switch (parse_family_kind(spec.kind)) {
    case LossFamily::Kind::Linear: return LossFamily::linear();
    case LossFamily::Kind::QuadraticTracking: return LossFamily::quadratic_tracking(spec.scale);
    case LossFamily::Kind::LogSmooth: return LossFamily::log_smooth();
    case LossFamily::Kind::GradientOracle: break;
  }
  throw InvalidArgument("gradient-oracle families are built by their environment");
}

Domain make_domain(const DomainSpec& spec) {
  if (spec.kind == "ball") {
    return Domain::ball(spec.center.size() ? spec.center : Vector(Vector::Zero(2)), spec.radius);
  }
  if (spec.kind == "box") return Domain::box(spec.lo, spec.hi);
  throw InvalidArgument(fmt::format("unknown domain kind '{}'", spec.kind));
}

Trace run_episode(Learner& learner, Environment& env, std::uint64_t seed, std::uint64_t episode) {
  Trace trace{learner.name(), env.kind(), env.family(), env.domain(), seed, episode, {}, {}};
  const LossFamily& fam = env.family();
  const bool closed_form =
      fam.kind() == LossFamily::Kind::Linear || fam.kind() == LossFamily::Kind::QuadraticTracking;
  trace.rounds.reserve(static_cast<std::size_t>(env.horizon()));
  for (int t = 1; t <= env.horizon(); ++t) {
    try {
      RoundRecord r;
      r.t = t;
      r.x = learner.play(t, env);
      r.step = learner.step_size();
      r.y = learner.paired_point();
      RoundOutcome out = env.step(t, r.x);
      r.xi = out.xi;
      r.g = fam.grad(r.x, r.xi);
      r.loss = fam.eval(r.x, r.xi);
      r.sigma_sq = out.sigma_sq;
      r.Sigma_sq = out.Sigma_sq;
      r.mean_grad_x = out.mean_grad_at(r.x);
      if (closed_form) r.u_star = env.mean_minimizer(out.law);
      learner.update(t, r.xi);
      trace.rounds.push_back(std::move(r));
    } catch (const Error&) {
      rethrow_with_round(t);
    }
  }
  trace.profile = env.variance_profile();
  return trace;
}

Episode run_episode(const EpisodeSpec& spec, int T, std::uint64_t seed, std::uint64_t episode,
                    const std::function<void(Learner&)>& prepare) {
  auto env = make_environment(spec.env, make_family(spec.family), make_domain(spec.domain), T, seed, episode);
  auto learner = make_learner(spec.learner, env->family(), env->domain(), T);
  if (prepare) prepare(*learner);
  Trace trace = run_episode(*learner, *env, seed, episode);
  return Episode{std::move(trace), std::move(env), std::move(learner)};
}

Vector best_fixed_comparator(const Trace& trace) {
  if (trace.rounds.empty()) throw InvalidArgument("empty trace");
  const Domain& dom = trace.domain;
  const int d = dom.dimension();
  switch (trace.family.kind()) {
    case LossFamily::Kind::QuadraticTracking: {
      Vector target = Vector::Zero(d);
      for (const auto& r : trace.rounds) {
        target += r.xi.point;
        if (r.xi.shift.size()) target -= r.xi.shift / trace.family.scale();
      }
      return project(dom, target / trace.T());
    }
    case LossFamily::Kind::Linear: {
      Vector c = Vector::Zero(d);
      for (const auto& r : trace.rounds) {
        c += r.xi.point;
        if (r.xi.shift.size()) c += r.xi.shift;
      }
      return dom.linear_minimizer(c, dom.center());
    }
    default: return solve_comparator(trace);
  }
}

Vector best_linearized_comparator(const Trace& trace) {
  if (trace.rounds.empty()) throw InvalidArgument("empty trace");
  Vector c = Vector::Zero(trace.domain.dimension());
  for (const auto& r : trace.rounds) c += r.g;
  return trace.domain.linear_minimizer(c, trace.domain.center());
}

double regret(const Trace& trace, const Vector& u) {
  require_feasible(trace, u);
  CompensatedSum s;
  for (const auto& r : trace.rounds) {
    s.add(r.loss);
    s.add(-trace.family.eval(u, r.xi));
  }
  return s.value();
}

double linearized_regret(const Trace& trace, const Vector& u) {
  require_feasible(trace, u);
  CompensatedSum s;
  for (const auto& r : trace.rounds) s.add(r.g.dot(r.x - u));
  return s.value();
}

double dynamic_regret(const Trace& trace, const std::vector<Vector>& path) {
  if (path.size() != trace.rounds.size()) {
    throw DimensionMismatch(fmt::format("path has {} points for {} rounds", path.size(), trace.rounds.size()));
  }
  CompensatedSum s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    require_feasible(trace, path[i]);
    s.add(trace.rounds[i].loss);
    s.add(-trace.family.eval(path[i], trace.rounds[i].xi));
  }
  return s.value();
}

std::vector<double> prefix_regrets(const Trace& trace) {
  const LossFamily& fam = trace.family;
  const bool quad = fam.kind() == LossFamily::Kind::QuadraticTracking;
  if (!quad && fam.kind() != LossFamily::Kind::Linear) {
    throw InvalidArgument(fmt::format("prefix regrets need linear or quadratic losses, got {}", fam.name()));
  }
  const Domain& dom = trace.domain;
  const double a = fam.scale();
  // Sum of losses at u: (a/2)(t ||u||^2 - 2 <u, P> + Q) + <V, u> for quadratics, <P + V, u> for linear.
  Vector P = Vector::Zero(dom.dimension());
  Vector V = Vector::Zero(dom.dimension());
  double Q = 0.0;
  CompensatedSum learner;
  std::vector<double> out;
  out.reserve(trace.rounds.size());
  for (const auto& r : trace.rounds) {
    P += r.xi.point;
    if (r.xi.shift.size()) V += r.xi.shift;
    Q += r.xi.point.squaredNorm();
    learner.add(r.loss);
    const double t = static_cast<double>(out.size() + 1);
    double best = 0.0;
    if (quad) {
      const Vector u = project(dom, (P - V / a) / t);
      best = 0.5 * a * (t * u.squaredNorm() - 2.0 * u.dot(P) + Q) + V.dot(u);
    } else {
      const Vector c = P + V;
      best = c.dot(dom.linear_minimizer(c, dom.center()));
    }
    out.push_back(learner.value() - best);
  }
  return out;
}

std::vector<Vector> optimal_path(const Trace& trace) {
  std::vector<Vector> path;
  path.reserve(trace.rounds.size());
  for (const auto& r : trace.rounds) {
    if (!r.u_star) throw InvalidArgument("trace has no per-round minimizers");
    path.push_back(*r.u_star);
  }
  return path;
}

RegretReport make_report(const Trace& trace) {
  RegretReport rep;
  rep.T = trace.T();
  rep.D = trace.D();
  rep.G = trace.family.G();
  rep.L = trace.family.L();
  rep.mu = trace.family.mu();
  rep.comparator = best_fixed_comparator(trace);
  rep.static_regret = regret(trace, rep.comparator);
  rep.linearized_regret = linearized_regret(trace, rep.comparator);
  if (!trace.rounds.empty() && trace.rounds.front().u_star) rep.dynamic_regret = dynamic_regret(trace, optimal_path(trace));
  rep.sigma_bar = trace.profile.sigma_bar;
  rep.Sigma_bar = trace.profile.Sigma_bar;
  rep.sigma_max = trace.profile.sigma_max;
  rep.Sigma_max = trace.profile.Sigma_max;
  return rep;
}

VariationDiagnostics variation_diagnostics(const Trace& trace) {
  VariationDiagnostics v;
  const int T = trace.T();
  if (T == 0) return v;
  for (int i = 0; i < T; ++i) {
    v.sigma_cum += trace.profile.sigma_sq[static_cast<std::size_t>(i)];
    if (i > 0) v.Sigma_cum += trace.profile.Sigma_sq[static_cast<std::size_t>(i)];
  }
  const LossFamily& fam = trace.family;
  const auto& R = trace.rounds;
  if (fam.kind() == LossFamily::Kind::Linear || fam.kind() == LossFamily::Kind::QuadraticTracking) {
    // grad f_t(x) = a x + b_t, so differences do not depend on x.
    const double a = fam.kind() == LossFamily::Kind::Linear ? 1.0 : -fam.scale();
    std::vector<Vector> b;
    b.reserve(R.size());
    Vector mean = Vector::Zero(trace.domain.dimension());
    for (const auto& r : R) {
      Vector bt = a * r.xi.point;
      if (r.xi.shift.size()) bt += r.xi.shift;
      mean += bt;
      b.push_back(std::move(bt));
    }
    mean /= T;
    for (int i = 0; i < T; ++i) {
      v.Var_T += (b[static_cast<std::size_t>(i)] - mean).squaredNorm();
      if (i > 0) v.D2 += (b[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i - 1)]).squaredNorm();
    }
    return v;
  }
  if (trace.domain.dimension() > 2) throw InvalidArgument("grid-based diagnostics support dimension <= 2");
  const auto grid = trace.domain.grid(trace.domain.dimension() == 1 ? 1000 : 100);
  std::vector<double> d2(R.size(), 0.0);
  for (const Vector& x : grid) {
    std::vector<Vector> g;
    g.reserve(R.size());
    Vector mean = Vector::Zero(x.size());
    for (const auto& r : R) {
      g.push_back(fam.grad(x, r.xi));
      mean += g.back();
    }
    mean /= T;
    double var = 0.0;
    for (int i = 0; i < T; ++i) {
      var += (g[static_cast<std::size_t>(i)] - mean).squaredNorm();
      if (i > 0) {
        auto& slot = d2[static_cast<std::size_t>(i)];
        slot = std::max(slot, (g[static_cast<std::size_t>(i)] - g[static_cast<std::size_t>(i - 1)]).squaredNorm());
      }
    }
    v.Var_T = std::max(v.Var_T, var);
  }
  for (double x : d2) v.D2 += x;
  return v;
}

PropB6Terms prop_b6_check(const Trace& trace, const std::vector<std::optional<Vector>>* paired) {
  if (paired && paired->size() != trace.rounds.size()) {
    throw DimensionMismatch("paired points must match the number of rounds");
  }
  const double L = trace.family.L();
  const double D = trace.D();
  CompensatedSum lhs;
  CompensatedSum drift;
  double Sigma_sum = 0.0;
  double sigma_sum = 0.0;
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    const RoundRecord& r = trace.rounds[i];
    sigma_sum += r.sigma_sq;
    if (i == 0) {
      lhs.add(r.g.squaredNorm());
      continue;
    }
    Sigma_sum += r.Sigma_sq;
    const std::optional<Vector>& y = paired ? (*paired)[i] : r.y;
    if (!y) throw InvalidArgument(fmt::format("round {} has no paired point", r.t));
    const Vector opt = trace.family.grad(*y, trace.rounds[i - 1].xi);
    lhs.add((r.g - opt).squaredNorm());
    drift.add((r.x - *y).squaredNorm());
  }
  PropB6Terms out;
  out.lhs = lhs.value();
  if (trace.rounds.empty()) return out;
  out.rhs = 4.0 * Sigma_sum + 4.0 * trace.rounds.front().mean_grad_x.squaredNorm() + 8.0 * sigma_sum +
            4.0 * L * L * drift.value() + 4.0 * L * L * D * D;
  return out;
}

std::vector<double> parallel_map(std::size_t n, int threads, const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(n, 0.0);
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Summary expected_regret(const EpisodeSpec& spec, int T, int n_seeds, std::uint64_t seed, int threads) {
  const auto values = parallel_map(static_cast<std::size_t>(n_seeds), threads, [&](std::size_t i) {
    const Episode ep = run_episode(spec, T, seed, i);
    return regret(ep.trace, best_fixed_comparator(ep.trace));
  });
  return summarize(values);
}

}  // namespace seaoco
