// Message-sweep throughput, serial reference vs OpenMP kernels.
// One iteration = a responsibility sweep, an availability sweep and the
// per-row argmax, which is what the engine does per step.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "geoap/kernels.hpp"

namespace {

using geoap::DenseMatrix;
using geoap::NeighborhoodMask;

DenseMatrix<double> random_similarity(std::size_t n) {
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(-10.0, 0.0);
    DenseMatrix<double> s(n, n);
    for (double& x : s.values()) x = u(rng);
    for (std::size_t i = 0; i < n; ++i) s(i, i) = -5.0;
    return s;
}

// Ring-with-chords neighbourhoods keep roughly 1% of entries inside.
NeighborhoodMask sparse_mask(std::size_t n) {
    NeighborhoodMask m(n, geoap::TopoDistanceKind::ShortestPath, 2);
    const std::size_t reach = std::max<std::size_t>(1, n / 200);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d <= reach; ++d) {
            m.set(i, (i + d) % n, true);
            m.set((i + d) % n, i, true);
        }
    return m;
}

template <bool Parallel, bool Geometric>
void sweep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto s = random_similarity(n);
    const auto mask = sparse_mask(n);
    DenseMatrix<double> r(n, n, 0.0), a(n, n, 0.0);
    std::vector<double> support(n);
    std::vector<std::size_t> labels(n);
    const NeighborhoodMask* m = Geometric ? &mask : nullptr;
    for (auto _ : state) {
        if constexpr (Parallel) {
            geoap::kernels::update_responsibilities(s, a, r, 0.9);
            geoap::kernels::update_availabilities(r, m, a, 0.9, support);
            geoap::kernels::row_argmax(s, a, labels);
        } else {
            geoap::kernels::serial::update_responsibilities(s, a, r, 0.9);
            geoap::kernels::serial::update_availabilities(r, m, a, 0.9, support);
            geoap::kernels::serial::row_argmax(s, a, labels);
        }
        benchmark::DoNotOptimize(labels.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n));
    state.counters["threads"] = Parallel ? geoap::kernels::thread_count() : 1;
}

// 2708 and 3312 match the Cora and Citeseer node counts.
#define SIZES ->Arg(34)->Arg(512)->Arg(2708)->Arg(3312)->Unit(benchmark::kMillisecond)
BENCHMARK(sweep<false, false>) SIZES;
BENCHMARK(sweep<true, false>) SIZES;
BENCHMARK(sweep<false, true>) SIZES;
BENCHMARK(sweep<true, true>) SIZES;

}  // namespace

BENCHMARK_MAIN();
