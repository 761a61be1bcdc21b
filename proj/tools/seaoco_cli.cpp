// seaoco: run experiment configs and verification suites.
//
//   seaoco run <config.yaml> [--out DIR] [--threads N] [--seed S]
//   seaoco verify <suite> [--threads N] [--seed S]
//
// Exit codes: 0 success, 1 runtime failure or failed check, 2 bad config or usage.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seaoco/config.hpp"
#include "seaoco/runner.hpp"
#include "seaoco/verify.hpp"

namespace {

int do_run(const std::string& path, const std::string& out, int threads, const std::uint64_t* seed) {
  seaoco::Config config;
  try {
    config = seaoco::load_config(path);
  } catch (const seaoco::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  if (!out.empty()) config.out_dir = out;
  if (threads > 0) config.threads = threads;
  if (seed) config.seed = *seed;
  try {
    const auto res = seaoco::run_experiment(config);
    for (const auto& h : res.horizons) {
      std::cout << "T=" << h.T << " mean regret " << h.regret.mean << " +- " << h.regret.ci95 << '\n';
    }
    if (res.rate) std::cout << "rate_fit slope " << *res.rate << '\n';
    std::cout << "wrote " << res.directory << '\n';
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int do_verify(const std::string& suite, int threads, const std::uint64_t* seed) {
  seaoco::VerifyOptions opts;
  if (threads > 0) opts.threads = threads;
  if (seed) opts.seed = *seed;
  try {
    seaoco::suite_criteria(suite);
  } catch (const seaoco::InvalidArgument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  try {
    const auto results = seaoco::run_suite(suite, opts);
    std::cout << seaoco::format_results(results);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "verify failed: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimistic online convex optimization experiments"};
  app.require_subcommand(1);

  std::string out;
  int threads = 0;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--threads", threads, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "Output directory (overrides the config)");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a config-driven sweep");
  run->add_option("config", config_path, "YAML config file")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "thm1|thm2|thm4|msmwc|dyn|lb|o2b|corrupt|rom|propb6|all")->required();

  // Options are accepted after the subcommand as well.
  run->fallthrough();
  verify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::uint64_t* seed_ptr = seed_opt->count() ? &seed : nullptr;
  if (*run) return do_run(config_path, out, threads, seed_ptr);
  return do_verify(suite, threads, seed_ptr);
}
