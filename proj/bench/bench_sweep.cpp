// Serial reference vs the OpenMP map over the two heaviest sweep kernels.
// Arg is the worker count; 0 runs map_serial.

#include <benchmark/benchmark.h>

#include "ypfa/finite_disk.hpp"
#include "ypfa/layered_forces.hpp"
#include "ypfa/sweep.hpp"

namespace {

using namespace ypfa;

template <class Fn>
void run_map(benchmark::State& state, const std::vector<double>& items, Fn fn) {
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto out = workers == 0 ? map_serial(items, fn) : map_parallel(items, fn, workers);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(items.size()));
}

void BM_eta_delta(benchmark::State& state) {
    LayeredConfig cfg;
    cfg.separation = 100e-9;
    cfg.sphere = {150e-6, 4100.0, {10e-9, 7140.0}, {180e-9, 19280.0}};
    cfg.slab = {{3.5e-6, 2330.0}, {10e-9, 7140.0}, {210e-9, 19280.0}};
    const auto lambdas = grid_values({1e-9, 1e-3, 2000, Spacing::log});
    run_map(state, lambdas, [&](double l) { return eta_delta(cfg, {1.0, l}).eta_delta; });
}

void BM_xi_yukawa(benchmark::State& state) {
    const auto radii = grid_values({150e-6, 150e-3, 200, Spacing::log});
    run_map(state, radii, [](double rd) {
        const XiInputs x{100e-9, 150e-6, {rd, 3.5e-6, 1.0}};
        return xi_yukawa(x, {1.0, 500e-6}).ln_value;
    });
}

}  // namespace

BENCHMARK(BM_eta_delta)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_xi_yukawa)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
