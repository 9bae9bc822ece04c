#include <benchmark/benchmark.h>

#include "sparselob/book.hpp"
#include "sparselob/engine.hpp"
#include "sparselob/rng.hpp"
#include "sparselob/sampling.hpp"

using namespace sparselob;

namespace {

BookState bench_book() {
    return BookState(0.0, 0.01, {45, 44, 42, 39, 35}, {55, 56, 58, 61, 65},
                     std::vector<double>(5, 5.0), std::vector<double>(5, 5.0));
}

void BM_ApplyMarketOrder(benchmark::State& state) {
    const BookState book = bench_book();
    const MarketOrderMarks marks{12.0, {4, 3, 2, 1}, {5, 6, 7, 8}};
    for (auto _ : state) {
        auto result = apply_market_order(book, Side::Ask, marks);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_ApplyMarketOrder);

void BM_ApplyLimitOrder(benchmark::State& state) {
    const BookState book = bench_book();
    const LimitOrderMarks marks{8.0, 5.0};
    for (auto _ : state) {
        auto result = apply_limit_order(book, Side::Bid, marks);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_ApplyLimitOrder);

void BM_SampleNextEvent(benchmark::State& state) {
    const ModelParams params;
    const BookState book = bench_book();
    RngStream rng(1, 0);
    double t = 0.0;
    for (auto _ : state) {
        const auto next = sample_next_event(t, book, params, 3.0, rng);
        benchmark::DoNotOptimize(next);
        t = next && next->time < 2.9 ? next->time : 0.0;
    }
}
BENCHMARK(BM_SampleNextEvent);

void BM_SimulateSession(benchmark::State& state) {
    SimConfig cfg;
    int run = 0;
    for (auto _ : state) {
        const Trajectory traj = simulate(cfg, run++);
        benchmark::DoNotOptimize(traj.events.size());
        state.SetItemsProcessed(state.items_processed() +
                                static_cast<std::int64_t>(traj.events.size()));
    }
}
BENCHMARK(BM_SimulateSession)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
    SimConfig cfg;
    for (auto _ : state) {
        const EnsembleResult ens = run_monte_carlo(cfg, static_cast<int>(state.range(0)),
                                                   static_cast<int>(state.range(1)));
        benchmark::DoNotOptimize(ens.runs.size());
    }
}
BENCHMARK(BM_MonteCarlo)->Args({64, 1})->Args({64, 8})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
