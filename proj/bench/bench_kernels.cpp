#include <benchmark/benchmark.h>

#include <random>

#include "frog/activation.hpp"
#include "frog/kernel.hpp"
#include "frog/reach_weight.hpp"

using namespace frog;

namespace {

FrogConfig outward_config(int L) {
    auto kernel = std::make_shared<OutwardDriftKernel>(2, 0.8);
    return FrogConfig(FrogCounts::constant(Window::l1_ball(2, L), 1), make_sampler(kernel, RngStream(7)));
}

MarkedGraph dense_graph(int n) {
    std::mt19937_64 gen(3);
    std::bernoulli_distribution arc(0.2), mark(0.1);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    MarkedGraph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v)
            if (u != v && arc(gen)) g.add_arc(u, v, w(gen));
        if (mark(gen)) g.set_mark(u);
    }
    return g;
}

// Fresh configs each iteration so the trajectory cache starts empty.
void BM_all_awake_serial(benchmark::State& state) {
    for (auto _ : state) {
        const auto config = outward_config(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(all_awake_visitors_serial(config, Site::origin(2), 500));
    }
}

void BM_all_awake_parallel(benchmark::State& state) {
    for (auto _ : state) {
        const auto config = outward_config(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(all_awake_visitors(config, Site::origin(2), 500));
    }
}

void BM_reach_serial(benchmark::State& state) {
    const auto g = dense_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reach_weights_all_serial(g, 6));
}

void BM_reach_parallel(benchmark::State& state) {
    const auto g = dense_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reach_weights_all(g, 6));
}

} // namespace

BENCHMARK(BM_all_awake_serial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_all_awake_parallel)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_reach_serial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_reach_parallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
