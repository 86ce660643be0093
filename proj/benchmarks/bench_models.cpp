#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hmcglm/rng.hpp"

using namespace hmcglm;

namespace {

void bench_target(benchmark::State& state, const TargetDensity& target, double draw_sd) {
  Rng rng(1);
  VectorXd theta(target.dim);
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = draw_sd * rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(target.log_density(theta));
    benchmark::DoNotOptimize(target.grad_log_density(theta));
  }
}

void BM_LinearEval(benchmark::State& state) {
  bench_target(state, bench::warpbreaks_target(), 0.3);
}
void BM_LogisticEval(benchmark::State& state) {
  bench_target(state, bench::birthwt_target(), 0.3);
}
void BM_GlmmEval(benchmark::State& state) { bench_target(state, bench::gdat_target(), 0.05); }

}  // namespace

BENCHMARK(BM_LinearEval);
BENCHMARK(BM_LogisticEval);
BENCHMARK(BM_GlmmEval);
