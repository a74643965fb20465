#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "stablesde/drift.hpp"
#include "stablesde/metrics.hpp"
#include "stablesde/noise.hpp"
#include "stablesde/oubench.hpp"
#include "stablesde/scheme.hpp"

namespace {

using namespace stablesde;

void BM_SampleStable1d(benchmark::State& state) {
    const NoiseSpec spec = make_noise_spec(1.5, 1);
    RngStream rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_sym_stable_1d(spec, 1.0, rng));
}
BENCHMARK(BM_SampleStable1d);

void BM_SampleIsotropic(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const NoiseSpec spec = make_noise_spec(1.5, d);
    RngStream rng(1, 0);
    std::vector<double> out(static_cast<std::size_t>(d));
    for (auto _ : state) {
        sample_isotropic_stable(spec, 1.0, rng, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_SampleIsotropic)->Arg(2)->Arg(3);

void BM_SamplePareto(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const NoiseSpec spec = make_noise_spec(1.5, d);
    RngStream rng(1, 0);
    std::vector<double> out(static_cast<std::size_t>(d));
    for (auto _ : state) {
        sample_pareto_vec(spec, rng, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_SamplePareto)->Arg(1)->Arg(3);

void BM_ChainSteps(benchmark::State& state) {
    const NoiseSpec spec = make_noise_spec(1.5, 1);
    const DriftModel drift = builtin_drift("ou", 1, {});
    ChainConfig config;
    config.scheme = SchemeKind::ParetoNoise;
    config.eta = 0.05;
    config.steps = static_cast<std::uint64_t>(state.range(0));
    config.start = {0.0};
    config.ensemble = 1;
    for (auto _ : state) {
        const auto m = run_ensemble(config, drift, spec, 1);
        benchmark::DoNotOptimize(m.data().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChainSteps)->Arg(1000);

void BM_W1Equal(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RngStream rng(7, 0);
    std::vector<double> a(n), b(n);
    rng.fill_gaussian(a);
    rng.fill_gaussian(b);
    const EmpiricalMeasure ma(1, std::move(a));
    const EmpiricalMeasure mb(1, std::move(b));
    for (auto _ : state) benchmark::DoNotOptimize(w1_1d(ma, mb));
}
BENCHMARK(BM_W1Equal)->Arg(100000);

void BM_ParetoSchemeCf(benchmark::State& state) {
    const double eta = std::ldexp(1.0, -static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pareto_scheme_inv_cf(1.5, eta, 0.7));
}
BENCHMARK(BM_ParetoSchemeCf)->Arg(8)->Arg(12)->Arg(14);

void BM_CfGap(benchmark::State& state) {
    const double eta = std::ldexp(1.0, -static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(cf_gap(1.5, eta, SchemeKind::ParetoNoise));
}
BENCHMARK(BM_CfGap)->Arg(8)->Arg(10);

} // namespace

BENCHMARK_MAIN();
