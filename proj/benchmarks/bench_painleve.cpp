#include <benchmark/benchmark.h>

#include "painleve/asymptotics.hpp"
#include "painleve/harness.hpp"
#include "painleve/integrator.hpp"
#include "painleve/laurent.hpp"
#include "painleve/specfun.hpp"
#include "painleve/stokes.hpp"

using namespace painleve;

static void BM_LogGamma(benchmark::State& state) {
  Complex z{0.5, -0.0765863};
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::log_gamma(z));
    z += Complex(0.0, 1e-9);
  }
}
BENCHMARK(BM_LogGamma);

static void BM_ConnectionFormulas(benchmark::State& state) {
  const Complex s2 = stokes::zero_pole_multipliers().at(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stokes::sing_params(s2));
  }
}
BENCHMARK(BM_ConnectionFormulas);

static void BM_AppendixB(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(harness::appendix_b_stokes());
}
BENCHMARK(BM_AppendixB);

static void BM_Step(benchmark::State& state) {
  const ode::IntegratorConfig cfg;
  const ode::State s{-3.0, 0.4, -1.1};
  for (auto _ : state) benchmark::DoNotOptimize(ode::step(s, -0.01, cfg));
}
BENCHMARK(BM_Step);

static void BM_LaurentEval(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const ode::PoleData pd{-12.3, 0.8};
  for (auto _ : state) benchmark::DoNotOptimize(ode::laurent_eval(pd, degree, pd.p - 0.2));
}
BENCHMARK(BM_LaurentEval)->Arg(8)->Arg(12)->Arg(20);

static void BM_PredictPoles(benchmark::State& state) {
  const auto p = stokes::sing_params(stokes::zero_pole_multipliers().at(2));
  for (auto _ : state) benchmark::DoNotOptimize(asym::predict_poles(p, 1, 100));
}
BENCHMARK(BM_PredictPoles);

// Integration from the pole at 0 through every pole down to -x_min.
static void BM_IntegrateZeroPole(benchmark::State& state) {
  const double x_min = -static_cast<double>(state.range(0));
  const ode::IntegratorConfig cfg;
  std::size_t poles = 0;
  for (auto _ : state) {
    const auto t = ode::integrate(ode::PoleData{0.0, 0.0}, x_min, cfg);
    poles = t.poles.size();
    benchmark::DoNotOptimize(t.samples.data());
  }
  state.counters["poles"] = static_cast<double>(poles);
}
BENCHMARK(BM_IntegrateZeroPole)->Arg(20)->Arg(60)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_CompareZeroIC(benchmark::State& state) {
  const ode::IntegratorConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(harness::run_compare(harness::zero_ic(), -60.0, cfg).exp_y);
  }
}
BENCHMARK(BM_CompareZeroIC)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
