// OpenMP kernels vs their serial references
#include "vshmem/study.hpp"
#include "vshmem/variation.hpp"

#include <benchmark/benchmark.h>

using namespace vsh;

namespace {

const Config& cfg()
{
    static Config c = load_config(VSHMEM_DEFAULT_CONFIG);
    return c;
}

// small grid so one iteration stays well under a second
GridSpec grid()
{
    GridSpec g;
    g.misalign = {0, 20, 40};
    g.j_scale = {0.5, 0.7, 1.0};
    return g;
}

template <bool Par>
void BM_latency(benchmark::State& st)
{
    auto cur = wt_sweep_currents(cfg());
    for (auto _ : st) benchmark::DoNotOptimize(Par ? latency_sweep(cfg(), cur) : latency_sweep_serial(cfg(), cur));
}

template <bool Par>
void BM_variation(benchmark::State& st)
{
    auto d = eirw_write_drive(cfg());
    auto g = grid();
    for (auto _ : st)
        benchmark::DoNotOptimize(Par ? run_variation_map(cfg(), d, g) : run_variation_map_serial(cfg(), d, g));
}

template <bool Par>
void BM_monte_carlo(benchmark::State& st)
{
    auto d = eirw_write_drive(cfg());
    McSigmas s{0.05, 0.03, 0.03};
    for (auto _ : st)
        benchmark::DoNotOptimize(Par ? monte_carlo(cfg(), d, s, 16, 7) : monte_carlo_serial(cfg(), d, s, 16, 7));
}

template <bool Par>
void BM_pattern(benchmark::State& st)
{
    auto ac = make_array(cfg(), Flavor::EIRW, Mode::SingleEnded);
    for (auto _ : st) benchmark::DoNotOptimize(Par ? pattern_sweep(ac) : pattern_sweep_serial(ac));
}

template <bool Par>
void BM_scaling(benchmark::State& st)
{
    std::vector<int> sizes{256, 512, 1024};
    for (auto _ : st)
        benchmark::DoNotOptimize(Par ? scaling_sweep(cfg(), sizes) : scaling_sweep_serial(cfg(), sizes));
}

}  // namespace

BENCHMARK(BM_latency<false>)->Name("latency_sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_latency<true>)->Name("latency_sweep/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_variation<false>)->Name("variation_map/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_variation<true>)->Name("variation_map/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_monte_carlo<false>)->Name("monte_carlo/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_monte_carlo<true>)->Name("monte_carlo/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pattern<false>)->Name("pattern_sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pattern<true>)->Name("pattern_sweep/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scaling<false>)->Name("scaling_sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scaling<true>)->Name("scaling_sweep/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
