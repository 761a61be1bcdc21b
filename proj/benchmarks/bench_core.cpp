#include <benchmark/benchmark.h>

#include "seaoco/dyn_meta.hpp"
#include "seaoco/harness.hpp"
#include "seaoco/msmwc.hpp"

namespace {

seaoco::EpisodeSpec iid_spec(const std::string& learner) {
  seaoco::EpisodeSpec s;
  s.learner.kind = learner;
  s.domain.center = seaoco::Vector::Zero(2);
  s.env.kind = "iid";
  s.env.mean = seaoco::Vector::Constant(2, 0.2);
  s.env.sigma = 0.1;
  return s;
}

void BM_Episode(benchmark::State& state, const std::string& learner) {
  const auto spec = iid_spec(learner);
  const int T = static_cast<int>(state.range(0));
  std::uint64_t ep = 0;
  for (auto _ : state) {
    auto res = seaoco::run_episode(spec, T, 1, ep++);
    benchmark::DoNotOptimize(res.trace.rounds.back().x);
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK_CAPTURE(BM_Episode, oftrl, std::string("oftrl"))->Arg(1024);
BENCHMARK_CAPTURE(BM_Episode, omd, std::string("omd"))->Arg(1024);
BENCHMARK_CAPTURE(BM_Episode, msmwc, std::string("msmwc"))->Arg(1024);
BENCHMARK_CAPTURE(BM_Episode, dyn_meta, std::string("dyn_meta"))->Arg(1024);

void BM_WeightedEntropyArgmin(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  seaoco::Vector etas(K);
  seaoco::Vector linear(K);
  seaoco::Vector anchor = seaoco::Vector::Constant(K, 1.0 / K);
  for (int i = 0; i < K; ++i) {
    etas[i] = 1.0 / (1 << (i + 1));
    linear[i] = 0.1 * i - 0.3;
  }
  for (auto _ : state) benchmark::DoNotOptimize(seaoco::weighted_entropy_argmin(etas, linear, anchor));
}
BENCHMARK(BM_WeightedEntropyArgmin)->Arg(4)->Arg(16);

void BM_AdaHedgeGap(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  seaoco::Vector P = seaoco::Vector::Constant(K, 1.0 / K);
  seaoco::Vector v(K);
  for (int i = 0; i < K; ++i) v[i] = 0.37 * ((i * 7) % K);
  for (auto _ : state) benchmark::DoNotOptimize(seaoco::adahedge_gap(P, v, 2.0));
}
BENCHMARK(BM_AdaHedgeGap)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
