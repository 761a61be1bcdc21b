#include "seaoco/runner.hpp"

#include <cmath>
#include <filesystem>

#include <fmt/format.h>

#include "seaoco/export.hpp"

namespace seaoco {

void annotate_report(RegretReport& report, const Trace& trace, const EnvSpec& env) {
  if (env.kind == "corrupted" || env.kind == "corrupted_iid") report.C = env.budget;
  if (env.kind == "rom" && !trace.profile.sigma_sq.empty()) {
    // Round 1 draws from the full pool; for affine gradients the sup over x
    // coincides with the variance at any point.
    report.sigma1_sq = trace.profile.sigma_sq.front();
    report.sigma1_tilde_sq = report.sigma1_sq;
  }
}

RunResult run_experiment(const Config& c) {
  namespace fs = std::filesystem;
  RunResult res;
  const fs::path dir = fs::path(c.out_dir) / c.experiment;
  res.directory = dir.string();
  const bool sweep = c.horizons.size() > 1;

  nlohmann::json horizons = nlohmann::json::array();
  for (int T : c.horizons) {
    const fs::path tdir = sweep ? dir / fmt::format("T{}", T) : dir;
    HorizonResult hr;
    hr.T = T;
    hr.reports.resize(static_cast<std::size_t>(c.seeds));
    const auto regrets = parallel_map(static_cast<std::size_t>(c.seeds), c.threads, [&](std::size_t i) {
      try {
        const Episode ep = run_episode(c.episode, T, c.seed, i);
        RegretReport rep = make_report(ep.trace);
        annotate_report(rep, ep.trace, c.episode.env);
        if (c.theorem) bound_check(rep, *c.theorem);
        write_trace_csv(ep.trace, (tdir / fmt::format("{}.csv", i)).string());
        hr.reports[i] = rep;
        return rep.static_regret;
      } catch (const std::exception& e) {
        throw RunError(fmt::format("experiment '{}', T={}, seed={}, episode={}: {}", c.experiment, T, c.seed, i,
                                   e.what()));
      }
    });
    hr.regret = regrets.size() >= 2 ? summarize(regrets) : Summary{regrets.front(), 0.0, 0.0, 1};

    nlohmann::json h;
    h["T"] = T;
    h["mean_regret"] = hr.regret.mean;
    h["std_error"] = hr.regret.std_error;
    h["ci95"] = hr.regret.ci95;
    h["episodes"] = nlohmann::json::array();
    for (const auto& r : hr.reports) h["episodes"].push_back(report_to_json(r));
    horizons.push_back(std::move(h));
    res.horizons.push_back(std::move(hr));
  }

  if (res.horizons.size() >= 4) {
    std::vector<double> Ts;
    std::vector<double> means;
    for (const auto& h : res.horizons) {
      Ts.push_back(h.T);
      means.push_back(h.regret.mean);
    }
    try {
      res.rate = rate_fit(Ts, means);
    } catch (const InvalidArgument&) {
      // Non-positive mean regret: no log-log fit.
    }
  }

  res.report["experiment"] = c.experiment;
  res.report["learner"] = c.episode.learner.kind;
  res.report["environment"] = c.episode.env.kind;
  res.report["family"] = c.episode.family.kind;
  res.report["seed"] = c.seed;
  res.report["seeds"] = c.seeds;
  res.report["theorem"] = c.theorem ? nlohmann::json(*c.theorem) : nlohmann::json(nullptr);
  res.report["horizons"] = std::move(horizons);
  res.report["rate_fit"] = res.rate ? nlohmann::json(*res.rate) : nlohmann::json(nullptr);
  write_json(res.report, (dir / "report.json").string());
  return res;
}

}  // namespace seaoco
