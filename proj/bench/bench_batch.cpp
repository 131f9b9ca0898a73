#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gamesearch/harness.hpp"

using namespace gamesearch;

namespace {

const ExperimentSpec& suite_spec() {
  static const ExperimentSpec spec = [] {
    const auto dir = std::filesystem::temp_directory_path() / "gamesearch_bench";
    generate_suite(dir);
    std::ifstream in(dir / "suite.json");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_spec(ss.str(), dir);
  }();
  return spec;
}

void BM_BatchParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(suite_spec()));
}

void BM_BatchSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(suite_spec()));
}

void BM_SearchFig1(benchmark::State& state) {
  const Level l = parse_suite_level(fig1_level());
  for (auto _ : state) benchmark::DoNotOptimize(run_single(l, fig1_level().task, Mode::Search, 1, l.radius, 0, false));
}

void BM_OracleR7_3_3(benchmark::State& state) {
  const SuiteLevel& s = benchmark_levels().back();
  const Level l = parse_suite_level(s);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solvable(l, s.task));
}

}  // namespace

BENCHMARK(BM_BatchParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchFig1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OracleR7_3_3)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
