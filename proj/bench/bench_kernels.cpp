#include <benchmark/benchmark.h>

#include "substab/analysis.hpp"
#include "substab/generators.hpp"
#include "substab/objectives.hpp"
#include "substab/stability.hpp"

using namespace substab;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

const Instance& matching_instance() {
  static const Instance inst = generate({MatchingGraphFamily{7, make_rational(1, 2), 14}, CoverageFamily{}, 11});
  return inst;
}

const Instance& partition_instance() {
  static const Instance inst = generate({PartitionIntersectionFamily{2, 12, 4, 2}, AdditiveFamily{}, 5});
  return inst;
}

const Instance& coverage_instance() {
  static const Instance inst = generate({UniformFamily{14, 4}, CoverageFamily{12, make_rational(1, 3), 10, 1}, 3});
  return inst;
}

void BM_p_system(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(p_system_parameter(matching_instance().system, exec_of(state)));
}

void BM_p_extendibility(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(p_extendibility(partition_instance().system, std::nullopt, exec_of(state)));
}

void BM_tabulate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tabulate(coverage_instance().objective, exec_of(state)));
}

void BM_validate_objective(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(validate_objective(coverage_instance().objective, exec_of(state)));
}

void BM_validate_perturbation(benchmark::State& state) {
  const Objective& f = coverage_instance().objective;
  const Rational gamma = make_rational(3, 2);
  const Objective ft = build_sequence_perturbation(f, {0, 3, 5, 7}, gamma);
  for (auto _ : state) benchmark::DoNotOptimize(validate_gamma_perturbation(f, ft, gamma, exec_of(state)));
}

}  // namespace

// Argument 0 is the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_p_system)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_p_extendibility)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tabulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_validate_objective)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_validate_perturbation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
