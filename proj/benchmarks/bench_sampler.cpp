#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hmcglm/sampler.hpp"

using namespace hmcglm;

namespace {

// One warpbreaks HMC iteration with the example-1 tuning.
void BM_HmcStepWarpbreaks(benchmark::State& state) {
  const TargetDensity target = bench::warpbreaks_target();
  LeapfrogConfig cfg;
  cfg.eps = VectorXd::Constant(7, 0.2);
  cfg.eps[6] = 0.02;
  cfg.steps = 20;
  const MassSpec mass = MassSpec::identity(7);
  Rng rng(7);
  VectorXd theta = VectorXd::Zero(7);
  theta[6] = 1.0;
  double lp = target.log_density(theta);
  for (auto _ : state) {
    StepResult s = hmc_step(theta, lp, target, cfg, mass, rng);
    theta = std::move(s.theta);
    lp = s.log_post;
    benchmark::DoNotOptimize(theta.data());
  }
}

// Full example-3 run (2 chains, N reduced to keep iterations short).
void BM_GlmmChain(benchmark::State& state) {
  const TargetDensity target = bench::gdat_target();
  HmcConfig cfg;
  cfg.n_samples = static_cast<int>(state.range(0));
  cfg.theta_init = VectorXd::Zero(15);
  cfg.leapfrog.eps.resize(15);
  cfg.leapfrog.eps << 3e-2, 3e-2, 3e-2, 1e-3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1,
      3e-2;
  cfg.leapfrog.steps = 10;
  cfg.mass = MassSpec::identity(15);
  cfg.chains = 2;
  cfg.seed = 412;
  cfg.final_kick = FinalKick::Omit;
  for (auto _ : state) {
    const auto chains = run_chains(target, cfg);
    benchmark::DoNotOptimize(chains.front().samples.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_samples * cfg.chains);
}

}  // namespace

BENCHMARK(BM_HmcStepWarpbreaks);
BENCHMARK(BM_GlmmChain)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
