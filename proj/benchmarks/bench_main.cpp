#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "ratchet/classical.hpp"
#include "ratchet/observables.hpp"
#include "ratchet/propagator.hpp"
#include "ratchet/quasienergy.hpp"

using namespace ratchet;

static void BM_FloquetStep(benchmark::State& st) {
    SystemParams p;
    p.interaction = 1.0;
    const auto grid = make_grid(static_cast<std::size_t>(st.range(0)), p.hbar);
    const FloquetPropagator prop(grid, p);
    auto s = init_even_state(grid);
    for (auto _ : st) {
        prop.step(s);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_FloquetStep)->RangeMultiplier(2)->Range(1 << 10, 1 << 14);

static void BM_RecordedKick(benchmark::State& st) {
    SystemParams p;
    p.interaction = 1.0;
    const auto grid = make_grid(2048, p.hbar);
    for (auto _ : st) {
        auto run = record_evolution(init_even_state(grid), p, 100);
        benchmark::DoNotOptimize(run.series.p2_mean.back());
    }
    st.SetItemsProcessed(st.iterations() * 100);
}
BENCHMARK(BM_RecordedKick);

static void BM_ClassicalStep(benchmark::State& st) {
    SystemParams p;
    p.interaction = 3.0;
    const auto s = init_even_state(make_grid(2048, 1.0));
    const auto coeffs = fourier_kick_coefficients(s, p, static_cast<int>(st.range(0)));
    auto ens = init_ensemble(10000, 1);
    for (auto _ : st) {
        classical_step(ens, coeffs);
        benchmark::DoNotOptimize(ens.p.data());
    }
    st.SetItemsProcessed(st.iterations() * 10000);
}
BENCHMARK(BM_ClassicalStep)->Arg(64)->Arg(1023);

static void BM_FourierCoefficients(benchmark::State& st) {
    SystemParams p;
    p.interaction = 3.0;
    const auto s = init_even_state(make_grid(2048, 1.0));
    for (auto _ : st) benchmark::DoNotOptimize(fourier_kick_coefficients(s, p, 1023));
}
BENCHMARK(BM_FourierCoefficients);

static void BM_QuasienergySpectrum(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    std::vector<cplx> a(n);
    for (std::size_t t = 0; t < n; ++t) a[t] = std::polar(1.0, -0.37 * static_cast<double>(t));
    for (auto _ : st) benchmark::DoNotOptimize(quasienergy_spectrum(a, n));
}
BENCHMARK(BM_QuasienergySpectrum)->Arg(1 << 12)->Arg(1 << 14);
BENCHMARK_MAIN();
