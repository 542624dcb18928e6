#include <benchmark/benchmark.h>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/initial_data.hpp"
#include "coldplasma/limiters.hpp"
#include "coldplasma/sampling.hpp"
#include "coldplasma/solver.hpp"

namespace cp = coldplasma;

static void BM_rhs(benchmark::State& state) {
  const cp::ParticleState s{0.3, 0.4, -0.2, 0.1, -0.3};
  for (auto _ : state) benchmark::DoNotOptimize(cp::characteristic_rhs(s, 0.01));
}
BENCHMARK(BM_rhs);

static void BM_advance(benchmark::State& state) {
  cp::RunConfig c;
  c.M = static_cast<int>(state.range(0));
  cp::Ensemble e = cp::initialize(c);
  for (auto _ : state) benchmark::DoNotOptimize(cp::advance(e, 0.01));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_advance)->Arg(1012)->Arg(4050);

static void BM_hermite_sample(benchmark::State& state) {
  cp::RunConfig c;
  c.theta_max = 20.0;
  cp::Ensemble last;
  cp::run(c, [&](const cp::Ensemble& e) {
    if (e.theta >= 19.995) last = e;
  });
  const auto q = cp::linspace(-10.0, 10.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(cp::snapshot(last, q));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(q.size()));
}
BENCHMARK(BM_hermite_sample)->Unit(benchmark::kMicrosecond);

static void BM_limiter_trace(benchmark::State& state) {
  const cp::InitialValues v = cp::evaluate(cp::GaussianProfile{}, 1.0);
  const cp::PhasePoint p = cp::make_phase_point(v.dE, v.dP, v.P, v.E);
  cp::LimiterOptions o;
  o.method = state.range(0) ? cp::LimiterMethod::closed_form : cp::LimiterMethod::numeric;
  o.record_every = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cp::limiter_trace(p, 0.0, o));
}
BENCHMARK(BM_limiter_trace)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
