#include <benchmark/benchmark.h>

#include "obrechkoff/coefficients.hpp"
#include "obrechkoff/integrator.hpp"
#include "obrechkoff/problems.hpp"
#include "obrechkoff/stability.hpp"

namespace ob = obrechkoff;

// Coefficient evaluation: closed forms pay for guard digits at small v.
static void BM_Coefficients(benchmark::State& state) {
  const auto ctx = ob::make_context(static_cast<int>(state.range(1)));
  const auto method = static_cast<ob::MethodId>(state.range(0));
  const ob::Real v = ctx.parse("0.25");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ob::coefficients(method, v, ctx));
  }
}
BENCHMARK(BM_Coefficients)->ArgsProduct({{0, 1, 2}, {50, 100}});

static void BM_TaylorFallback(benchmark::State& state) {
  const auto ctx = ob::make_context(50);
  const ob::Real v = ctx.parse("0.01");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ob::taylor_fallback(ob::MethodId::PLDoublePrime, v, ctx));
  }
}
BENCHMARK(BM_TaylorFallback);

static void BM_PhaseLag(benchmark::State& state) {
  const auto ctx = ob::make_context(60);
  const ob::Real v = ctx.parse("0.003");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ob::phase_lag(ob::MethodId::Classical, v, ctx));
  }
}
BENCHMARK(BM_PhaseLag);

// One corrector step on the Duffing problem; range(0) = digits.
static void BM_DuffingStep(benchmark::State& state) {
  const auto ctx = ob::make_context(static_cast<int>(state.range(0)));
  const auto p = ob::duffing(ctx);
  const ob::Real h = p.x_end / 500L;
  auto cfg = ob::make_config(ob::MethodId::PLDoublePrime, h, *p.default_omega, ctx);
  const auto c = ob::coefficients(cfg.method, cfg.omega * h, ctx);
  const auto sv = ob::startup(p, cfg);
  ob::StepState s;
  s.x0 = p.x0;
  s.y_prev = sv.y0;
  s.y_curr = sv.y1;
  s.yp_prev = sv.yp0;
  s.yp_curr = sv.yp1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ob::step(s, c, p, cfg));
  }
}
BENCHMARK(BM_DuffingStep)->Arg(20)->Arg(50)->Arg(100);

static void BM_LinearRun(benchmark::State& state) {
  const auto ctx = ob::make_context(50);
  const auto p = ob::linear_forced(ctx);
  const auto cfg = ob::make_config(ob::MethodId::PLDoublePrime, ctx.pi() / state.range(0), ctx.real(10L), ctx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ob::integrate(p, cfg, ctx));
  }
}
BENCHMARK(BM_LinearRun)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
