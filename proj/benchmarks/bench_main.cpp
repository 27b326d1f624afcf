#include <benchmark/benchmark.h>

#include "geophase/dressed.hpp"
#include "geophase/dynamics.hpp"
#include "geophase/field_model.hpp"
#include "geophase/gauge.hpp"
#include "geophase/sensitivity.hpp"
#include "geophase/sweep.hpp"

using namespace geophase;

static void BM_GaugeExact(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauge_exact(x, 1.0));
        x += 1e-3;
    }
}
BENCHMARK(BM_GaugeExact);

static void BM_EffectivePeriod(benchmark::State& state) {
    const long steps = state.range(0);
    PropagationOptions o;
    o.checkpoints = 0;
    o.estimate_error = false;
    for (auto _ : state) benchmark::DoNotOptimize(propagate_effective(1.0, 0.5, 1.0, kTwoPi, steps, {DressingMode::CoRotating, o}).u);
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_EffectivePeriod)->Arg(1000)->Arg(10000);

static void BM_FullSteps(benchmark::State& state) {
    FieldConfig c;
    c.c = 50.0;
    const long steps = state.range(0);
    PropagationOptions o;
    o.checkpoints = 0;
    o.estimate_error = false;
    for (auto _ : state) benchmark::DoNotOptimize(propagate_full(c, Regime::NonAbelian, 1, steps, o).u);
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_FullSteps)->Arg(100000);

static void BM_InstantaneousEigenbasis(benchmark::State& state) {
    FieldConfig c;
    c.b = 0.5;
    const LabHamiltonian h(c, Regime::Abelian);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(instantaneous_eigenbasis(h, t).vectors);
        t += 0.01;
    }
}
BENCHMARK(BM_InstantaneousEigenbasis);

static void BM_MonteCarlo(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_phase_noise(100.0, 1.0, 1.0, 1.0, 0.01, 100000).measured_std);
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

static void BM_Fig2(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fig2_dataset(201).rows.size());
}
BENCHMARK(BM_Fig2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
