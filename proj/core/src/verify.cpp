#include "seaoco/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "seaoco/conversions.hpp"
#include "seaoco/errors.hpp"
#include "seaoco/harness.hpp"
#include "seaoco/runner.hpp"

namespace seaoco {
namespace {

const double kSmoothConst = 27.0 + 6.0 * std::numbers::sqrt2;

Check upper(std::string name, double observed, double bound) {
  const double m = bound - observed;
  return {std::move(name), observed, bound, m, m >= 0.0};
}

Check lower(std::string name, double observed, double bound) {
  const double m = observed - bound;
  return {std::move(name), observed, bound, m, m >= 0.0};
}

Check within(std::string name, double observed, double lo, double hi) {
  const double to_lo = observed - lo;
  const double to_hi = hi - observed;
  const bool near_lo = to_lo < to_hi;
  const double m = std::min(to_lo, to_hi);
  return {fmt::format("{} in [{}, {}]", name, lo, hi), observed, near_lo ? lo : hi, m, m >= 0.0};
}

CriterionResult finish(std::string id, std::string description, std::vector<Check> checks) {
  CriterionResult r{std::move(id), std::move(description), std::move(checks)};
  r.passed = !r.checks.empty();
  const Check* worst = nullptr;
  for (const auto& c : r.checks) {
    r.passed = r.passed && c.passed;
    if (!worst || (!c.passed && worst->passed) || (c.passed == worst->passed && c.margin < worst->margin)) worst = &c;
  }
  if (worst) {
    r.observed = worst->observed;
    r.bound = worst->bound;
    r.margin = worst->margin;
  }
  return r;
}

// Per-episode rows of numbers, computed in parallel and indexed by episode.
template <class F>
std::vector<std::vector<double>> collect(int n, int threads, F fn) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
  parallel_map(rows.size(), threads, [&](std::size_t i) {
    rows[i] = fn(i);
    return 0.0;
  });
  return rows;
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t j) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(j));
  return out;
}

double mean_of(const std::vector<double>& xs) { return compensated_sum(xs) / static_cast<double>(xs.size()); }

std::vector<int> powers_of_two(int lo, int hi) {
  std::vector<int> out;
  for (int k = lo; k <= hi; ++k) out.push_back(1 << k);
  return out;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

DomainSpec unit_ball() {
  DomainSpec d;
  d.kind = "ball";
  d.center = Vector::Zero(2);
  d.radius = 1.0;
  return d;
}

// Quadratic tracking with mean (0.3, -0.2) on the unit ball.
EpisodeSpec quadratic_spec(const std::string& learner, const std::string& env_kind, double sigma) {
  EpisodeSpec s;
  s.learner.kind = learner;
  s.family.kind = "quadratic_tracking";
  s.family.scale = 1.0;
  s.domain = unit_ball();
  s.env.kind = env_kind;
  s.env.mean = vec2(0.3, -0.2);
  s.env.sigma = sigma;
  return s;
}

EpisodeSpec adversarial_spec(const std::string& learner, const std::string& pattern) {
  EpisodeSpec s;
  s.learner.kind = learner;
  s.family.kind = "linear";
  s.domain = unit_ball();
  s.env.kind = "adversarial_seq";
  s.env.pattern = pattern;
  s.env.amplitude = 1.0;
  s.env.offset = Vector::Zero(2);
  if (pattern == "cycle") s.env.points = {vec2(1.0, 0.0), vec2(0.0, 1.0), vec2(-std::sqrt(0.5), -std::sqrt(0.5))};
  return s;
}

EpisodeSpec lower_bound_spec(const std::string& learner) {
  EpisodeSpec s;
  s.learner.kind = learner;
  s.domain.kind = "box";
  s.domain.lo = Vector::Constant(1, 1.0);
  s.domain.hi = Vector::Constant(1, 2.0);
  s.env.kind = "rademacher_lb";
  s.env.G = 1.0;
  return s;
}

const std::vector<std::string> kPatterns{"alternating", "random", "adaptive", "cycle"};

// Largest excess of prefix regret over c * sqrt(t); returns (regret, bound) at that t.
std::pair<double, double> worst_prefix(const std::vector<double>& regrets, const std::function<double(int)>& bound) {
  double worst = -kInfinity;
  std::pair<double, double> at{0.0, 0.0};
  for (std::size_t i = 0; i < regrets.size(); ++i) {
    const double b = bound(static_cast<int>(i) + 1);
    if (regrets[i] - b > worst) {
      worst = regrets[i] - b;
      at = {regrets[i], b};
    }
  }
  return at;
}

CriterionResult criterion_1(const VerifyOptions& o) {
  std::vector<Check> checks;
  for (const auto& learner : o.learners) {
    for (const auto& pattern : kPatterns) {
      const Episode ep = run_episode(adversarial_spec(learner, pattern), 10000, o.seed, 0);
      const double D = ep.trace.D();
      const double G = ep.trace.family.G();
      const auto [reg, b] = worst_prefix(prefix_regrets(ep.trace), [&](int t) {
        return (2.0 * std::numbers::sqrt2 + 4.0) * D * G * std::sqrt(double(t));
      });
      checks.push_back(upper(fmt::format("{} {} worst prefix regret", learner, pattern), reg, b));
    }
  }
  return finish("1", "worst-case adversarial regret <= (2sqrt2+4) D G sqrt(T) on every prefix", std::move(checks));
}

CriterionResult criterion_2(const VerifyOptions& o) {
  std::vector<Check> checks;
  for (const auto& learner : o.learners) {
    for (double sigma : {0.1, 0.3}) {
      for (int T : powers_of_two(6, 12)) {
        const auto spec = quadratic_spec(learner, "iid", sigma);
        const auto rows = collect(300, o.threads, [&](std::size_t i) {
          const Episode ep = run_episode(spec, T, o.seed, i);
          RegretReport rep = make_report(ep.trace);
          return std::vector<double>{rep.static_regret, bound_value(rep, "thm1")};
        });
        const Summary reg = summarize(column(rows, 0));
        checks.push_back(upper(fmt::format("{} sigma={} T={} mean regret", learner, sigma, T), reg.mean,
                               mean_of(column(rows, 1)) + reg.ci95));
      }
    }
  }
  return finish("2", "smooth i.i.d. mean regret <= (27+6sqrt2)LD^2 + (2+4sqrt2)D sigma sqrt(T) + CI",
                std::move(checks));
}

CriterionResult criterion_3(const VerifyOptions& o) {
  std::vector<Check> checks;
  const int T = 1 << 12;
  for (const auto& learner : o.learners) {
    std::vector<double> means;
    for (double sigma : {0.0, 0.1, 0.2}) {
      const auto spec = quadratic_spec(learner, "iid", sigma);
      const auto reg = parallel_map(300, o.threads, [&](std::size_t i) {
        const Episode ep = run_episode(spec, T, o.seed, i);
        return regret(ep.trace, best_fixed_comparator(ep.trace));
      });
      means.push_back(mean_of(reg));
    }
    const double ratio = (means[2] - means[0]) / (means[1] - means[0]);
    checks.push_back(within(fmt::format("{} regret ratio sigma 0.2 / 0.1", learner), ratio, 1.6, 2.4));
  }
  return finish("3", "noise-driven regret scales with sigma", std::move(checks));
}

CriterionResult criterion_4(const VerifyOptions& o) {
  std::vector<Check> checks;
  for (const auto& learner : o.learners) {
    const Episode ep = run_episode(quadratic_spec(learner, "iid", 0.0), 10000, o.seed, 0);
    const double bound = kSmoothConst * ep.trace.family.L() * ep.trace.D() * ep.trace.D();
    const auto regrets = prefix_regrets(ep.trace);
    checks.push_back(upper(fmt::format("{} max prefix regret", learner),
                           *std::max_element(regrets.begin(), regrets.end()), bound));
    std::vector<double> Ts;
    std::vector<double> vals;
    for (int T : powers_of_two(6, 13)) {
      Ts.push_back(T);
      vals.push_back(regrets[static_cast<std::size_t>(T - 1)]);
    }
    checks.push_back(upper(fmt::format("{} log-log slope of regret", learner), rate_fit(Ts, vals), 0.1));
  }
  return finish("4", "deterministic smooth losses give constant regret", std::move(checks));
}

CriterionResult criterion_5(const VerifyOptions& o) {
  std::vector<Check> checks;
  auto spec = quadratic_spec("oftl_sc", "iid", 0.3);
  spec.learner.mu = 1.0;
  std::vector<double> logT;
  std::vector<double> means;
  for (int T : powers_of_two(6, 13)) {
    const auto rows = collect(300, o.threads, [&](std::size_t i) {
      const Episode ep = run_episode(spec, T, o.seed, i);
      RegretReport rep = make_report(ep.trace);
      return std::vector<double>{rep.static_regret, bound_value(rep, "thm4") + rep.G * rep.D};
    });
    const Summary reg = summarize(column(rows, 0));
    checks.push_back(upper(fmt::format("T={} mean regret", T), reg.mean, mean_of(column(rows, 1)) + reg.ci95));
    logT.push_back(std::log(double(T)));
    means.push_back(reg.mean);
  }
  checks.push_back(lower("R^2 of mean regret against log T", linear_fit(logT, means).r_squared, 0.95));
  return finish("5", "strongly convex regret grows like log T within the known-mu bound", std::move(checks));
}

CriterionResult criterion_6(const VerifyOptions& o) {
  std::vector<Check> checks;
  const int T = 1 << 10;
  const auto spec = quadratic_spec("msmwc", "iid", 0.3);
  const auto rows = collect(100, o.threads, [&](std::size_t i) {
    const Episode ep = run_episode(spec, T, o.seed, i);
    RegretReport rep = make_report(ep.trace);
    return std::vector<double>{rep.static_regret, bound_value(rep, "msmwc")};
  });
  const Summary reg = summarize(column(rows, 0));
  checks.push_back(upper("strongly convex mean regret", reg.mean, mean_of(column(rows, 1)) + reg.ci95));
  for (const auto& pattern : kPatterns) {
    const Episode ep = run_episode(adversarial_spec("msmwc", pattern), 10000, o.seed, 0);
    const double D = ep.trace.D();
    const double G = ep.trace.family.G();
    const auto [r, b] = worst_prefix(prefix_regrets(ep.trace), [&](int t) {
      return 50.0 * G * D * std::sqrt(double(t)) * std::log(D * t);
    });
    checks.push_back(upper(fmt::format("adversarial {} worst prefix regret", pattern), r, b));
  }
  return finish("6", "MsMwC adapts to unknown curvature and keeps the worst-case rate", std::move(checks));
}

// Largest gap, over rounds' experts, in sum <l, W - u> = meta regret vs e_k + worker k regret.
double decomposition_residual(const DynMetaLearner& learner, const Trace& trace) {
  const auto& recs = learner.records();
  const auto path = optimal_path(trace);
  const int K = learner.grid().K;
  double worst = 0.0;
  for (int k = 0; k < K; ++k) {
    CompensatedSum total;
    CompensatedSum meta;
    CompensatedSum worker;
    for (std::size_t t = 0; t < recs.size(); ++t) {
      const auto& r = recs[t];
      total.add(r.ell.dot(r.W - path[t]));
      meta.add(r.P.dot(r.L) - r.L[k]);
      worker.add(r.ell.dot(r.w[static_cast<std::size_t>(k)] - path[t]));
    }
    worst = std::max(worst, std::abs(total.value() - meta.value() - worker.value()));
  }
  return worst;
}

CriterionResult criterion_7(const VerifyOptions& o) {
  std::vector<Check> checks;
  const auto spec = quadratic_spec("dyn_meta", "drifting", 0.1);
  std::vector<double> Ts;
  std::vector<double> means;
  double residual = 0.0;
  for (int T : powers_of_two(7, 12)) {
    const auto rows = collect(20, o.threads, [&](std::size_t i) {
      Episode ep = run_episode(spec, T, o.seed, i, [](Learner& l) {
        static_cast<DynMetaLearner&>(l).set_recording(true);
      });
      const auto& dyn = static_cast<const DynMetaLearner&>(*ep.learner);
      return std::vector<double>{dynamic_regret(ep.trace, optimal_path(ep.trace)),
                                 decomposition_residual(dyn, ep.trace)};
    });
    const auto res = column(rows, 1);
    residual = std::max(residual, *std::max_element(res.begin(), res.end()));
    Ts.push_back(T);
    means.push_back(mean_of(column(rows, 0)));
  }
  checks.push_back(upper("log-log slope of mean dynamic regret", rate_fit(Ts, means), 0.95));
  checks.push_back(upper("max decomposition residual", residual, 1e-9));
  return finish("7", "dynamic regret is sublinear under slow drift", std::move(checks));
}

CriterionResult criterion_8(const VerifyOptions& o) {
  std::vector<Check> checks;
  const int T = 1 << 12;
  for (const auto& learner : o.learners) {
    const auto spec = lower_bound_spec(learner);
    double threshold = 0.0;
    const auto reg = parallel_map(500, o.threads, [&](std::size_t i) {
      const Episode ep = run_episode(spec, T, o.seed, i);
      return linearized_regret(ep.trace, best_linearized_comparator(ep.trace));
    });
    const Domain dom = make_domain(spec.domain);
    threshold = dom.diameter() * spec.env.G * std::sqrt(T / 2.0) / 32.0;
    const Summary s = summarize(reg);
    checks.push_back(lower(fmt::format("{} mean regret", learner), s.mean, threshold - s.ci95));
  }
  return finish("8", "regret on the Rademacher construction stays above DG sqrt(T/2)/32", std::move(checks));
}

CriterionResult criterion_9(const VerifyOptions& o) {
  std::vector<Check> checks;
  const int T = 1 << 10;
  const std::vector<double> budgets{0.0, 16.0, 64.0, 256.0};
  for (const auto& learner : o.learners) {
    std::vector<double> means;
    for (double C : budgets) {
      auto spec = quadratic_spec(learner, "corrupted", 0.1);
      spec.env.budget = C;
      spec.env.rate = 1.0;
      const auto reg = parallel_map(200, o.threads, [&](std::size_t i) {
        const Episode ep = run_episode(spec, T, o.seed, i);
        return regret(ep.trace, best_fixed_comparator(ep.trace));
      });
      means.push_back(mean_of(reg));
    }
    std::vector<double> lc;
    std::vector<double> ld;
    bool positive = true;
    for (std::size_t i = 1; i < budgets.size(); ++i) {
      const double diff = means[i] - means[0];
      positive = positive && diff > 0.0;
      lc.push_back(std::log(budgets[i]));
      ld.push_back(std::log(std::max(diff, 1e-300)));
    }
    const double slope = positive ? linear_fit(lc, ld).slope : std::nan("");
    checks.push_back(within(fmt::format("{} exponent of extra regret in C", learner), slope, 0.3, 0.7));
  }
  return finish("9", "extra regret from corruption grows like sqrt(C)", std::move(checks));
}

CriterionResult criterion_10(const VerifyOptions& o) {
  std::vector<Check> checks;
  const int T = 256;
  auto spec = quadratic_spec("oftrl", "rom", 0.3);
  spec.env.n = T;
  spec.env.pool_seed = 7;
  const auto rows = collect(100, o.threads, [&](std::size_t i) {
    const Episode ep = run_episode(spec, T, o.seed, i);
    const auto& p = ep.trace.profile;
    double Sigma = 0.0;
    for (std::size_t t = 1; t < p.Sigma_sq.size(); ++t) Sigma += p.Sigma_sq[t];
    const double G = ep.trace.family.G();
    const double s1 = p.sigma_sq.front();
    return std::vector<double>{Sigma, 8.0 * G * G, compensated_sum(p.sigma_sq),
                               T * s1 * std::log(2.0 * std::exp(2.0) * s1 / s1)};
  });
  const auto sig = column(rows, 0);
  const auto lim = column(rows, 1);
  double worst = -kInfinity;
  std::size_t at = 0;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (sig[i] - lim[i] > worst) {
      worst = sig[i] - lim[i];
      at = i;
    }
  }
  checks.push_back(upper("sum of Sigma_t^2 (worst shuffle)", sig[at], lim[at]));
  const Summary var = summarize(column(rows, 2));
  checks.push_back(upper("mean sum of sigma_t^2", var.mean, mean_of(column(rows, 3)) + var.ci95));
  return finish("10", "single-pass random order keeps both variation terms small", std::move(checks));
}

CriterionResult criterion_11(const VerifyOptions& o) {
  std::vector<Check> checks;
  for (const auto& learner : o.learners) {
    std::vector<double> Ts;
    std::vector<double> risk;
    for (int T : powers_of_two(5, 12)) {
      const O2bResult r = o2b_accelerated(quadratic_spec(learner, "iid", 0.0), T, o.seed, 0);
      Ts.push_back(T);
      risk.push_back(*r.excess_risk);
    }
    checks.push_back(within(fmt::format("{} deterministic excess-risk slope", learner), rate_fit(Ts, risk), -2.3, -1.7));
    Ts.clear();
    risk.clear();
    for (int T : powers_of_two(8, 12)) {
      const auto vals = parallel_map(100, o.threads, [&](std::size_t i) {
        return *o2b_accelerated(quadratic_spec(learner, "iid", 0.1), T, o.seed, i).excess_risk;
      });
      Ts.push_back(T);
      risk.push_back(mean_of(vals));
    }
    checks.push_back(within(fmt::format("{} sigma=0.1 excess-risk slope", learner), rate_fit(Ts, risk), -0.65, -0.35));
  }
  return finish("11", "online-to-batch with t-scaled losses", std::move(checks));
}

std::vector<std::pair<std::string, EpisodeSpec>> prop_b6_cases(const std::string& learner) {
  std::vector<std::pair<std::string, EpisodeSpec>> cases;
  cases.emplace_back("iid", quadratic_spec(learner, "iid", 0.3));
  cases.emplace_back("adversarial", adversarial_spec(learner, "random"));
  auto corrupted = quadratic_spec(learner, "corrupted", 0.1);
  corrupted.env.budget = 64.0;
  cases.emplace_back("corrupted", corrupted);
  auto rom = quadratic_spec(learner, "rom", 0.3);
  rom.env.pool_seed = 7;
  cases.emplace_back("rom", rom);
  cases.emplace_back("drifting", quadratic_spec(learner, "drifting", 0.1));
  auto switching = quadratic_spec(learner, "switching", 0.1);
  switching.env.switches = 3;
  switching.env.means = {vec2(0.5, 0.0), vec2(-0.5, 0.0)};
  cases.emplace_back("switching", switching);
  cases.emplace_back("rademacher_lb", lower_bound_spec(learner));
  return cases;
}

CriterionResult criterion_13(const VerifyOptions& o) {
  std::vector<Check> checks;
  for (const auto& learner : o.learners) {
    for (const auto& [name, spec] : prop_b6_cases(learner)) {
      const auto res = parallel_map(100, o.threads, [&, &spec = spec](std::size_t i) {
        const Episode ep = run_episode(spec, 512, o.seed, i);
        return prop_b6_check(ep.trace).residual();
      });
      const Summary s = summarize(res);
      checks.push_back(lower(fmt::format("{} {} mean residual", learner, name), s.mean, -s.ci95));
    }
  }
  return finish("13", "gradient-deviation inequality across environments", std::move(checks));
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& o) {
  switch (id) {
    case 1: return criterion_1(o);
    case 2: return criterion_2(o);
    case 3: return criterion_3(o);
    case 4: return criterion_4(o);
    case 5: return criterion_5(o);
    case 6: return criterion_6(o);
    case 7: return criterion_7(o);
    case 8: return criterion_8(o);
    case 9: return criterion_9(o);
    case 10: return criterion_10(o);
    case 11: return criterion_11(o);
    case 13: return criterion_13(o);
    default: break;
  }
  throw InvalidArgument(fmt::format("no runnable criterion {}", id));
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "thm1" || suite == "thm2") return {1, 2, 3, 4};
  if (suite == "thm4") return {5};
  if (suite == "msmwc") return {6};
  if (suite == "dyn") return {7};
  if (suite == "lb") return {8};
  if (suite == "corrupt") return {9};
  if (suite == "rom") return {10};
  if (suite == "o2b") return {11};
  if (suite == "propb6") return {13};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13};
  throw InvalidArgument(fmt::format("unknown suite '{}'", suite));
}

std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& options) {
  VerifyOptions o = options;
  if (suite == "thm1") o.learners = {"oftrl"};
  if (suite == "thm2") o.learners = {"omd"};
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, o));
  return out;
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::string out = fmt::format("{:<4} {:<52} {:>14} {:>14} {:>14}  {}\n", "id", "check", "observed", "bound",
                                "margin", "status");
  for (const auto& r : results) {
    for (const auto& c : r.checks) {
      out += fmt::format("{:<4} {:<52} {:>14.6g} {:>14.6g} {:>14.6g}  {}\n", r.id, c.name, c.observed, c.bound,
                         c.margin, c.passed ? "PASS" : "FAIL");
    }
  }
  return out;
}

}  // namespace seaoco
