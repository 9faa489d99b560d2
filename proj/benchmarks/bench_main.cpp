#include <benchmark/benchmark.h>

#include <cmath>

#include "logdamp/modes.hpp"
#include "logdamp/norms.hpp"
#include "logdamp/quadrature.hpp"
#include "logdamp/special.hpp"
#include "logdamp/symbols.hpp"

namespace {

void BM_EvaluateSymbols(benchmark::State& state) {
  double r = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(logdamp::evaluate_symbols(r));
    r = r < 1e6 ? r * 1.0001 : 1e-6;
  }
}
BENCHMARK(BM_EvaluateSymbols);

// sin^2(w r) e^{-r^2} on [0, 8]: the panel count grows linearly with w.
void BM_OscillatoryQuadrature(benchmark::State& state) {
  const double w = static_cast<double>(state.range(0));
  logdamp::QuadratureSpec spec;
  spec.upper = 8.0;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-300;
  spec.oscillation_frequency = w;
  auto f = [w](double r) {
    const double s = std::sin(w * r);
    return s * s * std::exp(-r * r);
  };
  std::size_t panels = 0;
  for (auto _ : state) {
    const auto result = logdamp::integrate(f, spec);
    panels = result.panels_used;
    benchmark::DoNotOptimize(result.value);
  }
  state.counters["panels"] = static_cast<double>(panels);
}
BENCHMARK(BM_OscillatoryQuadrature)->Arg(10)->Arg(100)->Arg(1000);

void BM_LowerMoment(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(logdamp::lower_moment(t, 2.0));
}
BENCHMARK(BM_LowerMoment)->Arg(100)->Arg(10000)->Arg(1000000);

void BM_UpperMomentScaled(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(logdamp::upper_moment_scaled(t, 3.0));
}
BENCHMARK(BM_UpperMomentScaled)->Arg(10)->Arg(1000)->Arg(1000000);

void BM_L2Norm(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  const logdamp::InitialData data{logdamp::InitialDataSpec::zero(3),
                                  logdamp::InitialDataSpec::gaussian(1.0, 1.0, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(logdamp::l2_norm(t, data).value);
}
BENCHMARK(BM_L2Norm)->Arg(100)->Arg(10000)->Arg(100000);

void BM_ProfileIntegralR(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(logdamp::profile_integral_r(t));
}
BENCHMARK(BM_ProfileIntegralR)->Arg(1000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
