#include <benchmark/benchmark.h>

#include "distalg/dist_parser.hpp"
#include "distalg/pairing.hpp"

namespace {

using namespace distalg;

Distribution sample_f() {
  return parse_distribution(
      "theta(-x)*sin(2*x) + theta(x)*exp(-x) + delta(x) - 2*delta'(x)");
}

Distribution sample_g() {
  return parse_distribution("theta(x-1)*cos(x) + delta(x-1) + x^2");
}

void BM_Star(benchmark::State& state) {
  Distribution f = sample_f();
  Distribution g = sample_g();
  for (auto _ : state) {
    benchmark::DoNotOptimize(star(f, g));
  }
}
BENCHMARK(BM_Star);

void BM_Derivative(benchmark::State& state) {
  Distribution f = sample_f();
  for (auto _ : state) {
    benchmark::DoNotOptimize(derivative(f));
  }
}
BENCHMARK(BM_Derivative);

void BM_Pair(benchmark::State& state) {
  Distribution f = sample_f();
  TestFunction t = TestFunction::bump(0.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair(f, t));
  }
}
BENCHMARK(BM_Pair);

void BM_StarLimitOracle(benchmark::State& state) {
  Distribution f = sample_f();
  Distribution g = sample_g();
  TestFunction t = TestFunction::bump(0.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(star_limit_oracle(f, g, t));
  }
}
BENCHMARK(BM_StarLimitOracle);

void BM_ParseNormalize(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_f());
  }
}
BENCHMARK(BM_ParseNormalize);

}  // namespace

BENCHMARK_MAIN();
