#include "sfar/montecarlo.hpp"
#include "sfar/recon.hpp"
#include "sfar/signal_model.hpp"

#include <benchmark/benchmark.h>

using namespace sfar;

namespace {

Measurements example1_measurements() {
    static SignalModel model = random_model({128, 128}, 12, 2.0, 3.0, 42);
    static Field field = synthesize(model);
    static SampleSupport support = uniform_support({128, 128}, 1474, 7);
    return extract(field, support);
}

void BM_synthesize(benchmark::State& state) {
    SignalModel model = random_model({128, 128}, 12, 2.0, 3.0, 42);
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(model));
}
BENCHMARK(BM_synthesize);

void BM_uniform_support(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(uniform_support({128, 128}, 1474, seed++));
}
BENCHMARK(BM_uniform_support);

void BM_partial_dft(benchmark::State& state) {
    Measurements meas = example1_measurements();
    for (auto _ : state) benchmark::DoNotOptimize(partial_dft(meas));
}
BENCHMARK(BM_partial_dft);

void BM_least_squares(benchmark::State& state) {
    Measurements meas = example1_measurements();
    SignalModel model = random_model({128, 128}, 12, 2.0, 3.0, 42);
    std::set<FrequencyBin> bins;
    for (const auto& c : model.components) bins.insert({c.kx, c.ky});
    FrequencySupport freqs{{128, 128}, {bins.begin(), bins.end()}};
    for (auto _ : state) benchmark::DoNotOptimize(least_squares_recover(meas, freqs));
}
BENCHMARK(BM_least_squares);

void BM_sfar2d_single(benchmark::State& state) {
    Measurements meas = example1_measurements();
    for (auto _ : state) benchmark::DoNotOptimize(sfar2d_single(meas, ReconParams{}));
}
BENCHMARK(BM_sfar2d_single);

void BM_sfar2d_iterative_example2(benchmark::State& state) {
    SignalModel model = random_model({128, 128}, 12, 1.0, 1.0, 314);
    for (int i = 0; i < 12; ++i) model.components[i].amplitude = (i < 8) ? 3.0 : 0.2;
    Measurements meas = extract(synthesize(model), uniform_support({128, 128}, 1474, 15));
    for (auto _ : state) benchmark::DoNotOptimize(sfar2d_iterative(meas, ReconParams{}));
}
BENCHMARK(BM_sfar2d_iterative_example2);

}  // namespace

BENCHMARK_MAIN();
