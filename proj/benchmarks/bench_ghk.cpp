#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ghk/discord.hpp"
#include "ghk/oracle.hpp"
#include "ghk/sampling.hpp"

namespace {

std::vector<ghk::CovarianceMatrix> sample_states(int count) {
  std::mt19937_64 rng(5);
  std::vector<ghk::CovarianceMatrix> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(ghk::congruence(ghk::random_local_symplectic(rng), ghk::covariance(ghk::random_standard_form(rng))));
  }
  return out;
}

void BM_MaxAffinityClosedForm(benchmark::State& state) {
  const auto states = sample_states(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghk::max_affinity(states[i++ % states.size()]));
  }
}
BENCHMARK(BM_MaxAffinityClosedForm);

void BM_SquareRootCm(benchmark::State& state) {
  const auto states = sample_states(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghk::square_root_cm(states[i++ % states.size()]));
  }
}
BENCHMARK(BM_SquareRootCm);

void BM_CorrelationReport(benchmark::State& state) {
  const auto states = sample_states(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghk::correlation_report(states[i++ % states.size()], Eigen::Vector4d::Zero()));
  }
}
BENCHMARK(BM_CorrelationReport);

void BM_Oracle(benchmark::State& state) {
  const auto states = sample_states(8);
  ghk::OptimizerConfig cfg;
  cfg.starts = static_cast<int>(state.range(0));
  cfg.threads = 1;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghk::oracle_max_affinity(states[i++ % states.size()], cfg));
  }
}
BENCHMARK(BM_Oracle)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
