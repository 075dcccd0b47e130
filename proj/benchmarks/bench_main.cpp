#include <benchmark/benchmark.h>

#include <random>
#include <set>
#include <vector>

#include <squashnet/activation.hpp>
#include <squashnet/approximator.hpp>
#include <squashnet/domain.hpp>
#include <squashnet/network.hpp>
#include <squashnet/separation.hpp>

using namespace squashnet;

namespace {

const SquashingFunction kLogistic = SquashingFunction::logistic();

PointSet random_set(const GridDomain& grid, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long long> dist(0, grid.point_count() - 1);
    std::set<long long> chosen;
    while (static_cast<int>(chosen.size()) < count) {
        chosen.insert(dist(rng));
    }
    return PointSet::from_indices(grid, {chosen.begin(), chosen.end()});
}

void BM_logistic_quantile(benchmark::State& state) {
    double p = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kLogistic.quantile(p));
        p += 1e-6;
        if (p >= 1.0) p = 1e-6;
    }
}
BENCHMARK(BM_logistic_quantile);

void BM_evaluate_separator(benchmark::State& state) {
    GridDomain grid({0.0, 0.0}, {1.0, 1.0}, {101, 101});
    PointSet b_set = random_set(grid, static_cast<int>(state.range(0)), 42);
    Point x0 = {0.01, 0.01};
    while (b_set.contains(x0)) {
        x0[0] += 0.01;
    }
    LayeredNetwork g = separate_point_from_set(x0, b_set, 0.1, kLogistic);
    Point p = {0.37, 0.61};
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.evaluate(p));
    }
    state.SetLabel("width " + std::to_string(stats(g).widths.front()));
}
BENCHMARK(BM_evaluate_separator)->Arg(10)->Arg(50)->Arg(200);

void BM_separate_point_from_set(benchmark::State& state) {
    GridDomain grid({0.0, 0.0}, {1.0, 1.0}, {101, 101});
    PointSet b_set = random_set(grid, static_cast<int>(state.range(0)), 7);
    Point x0 = {0.005, 0.005};
    while (b_set.contains(x0)) {
        x0[0] += 0.01;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(separate_point_from_set(x0, b_set, 0.1, kLogistic));
    }
}
BENCHMARK(BM_separate_point_from_set)->Arg(25)->Arg(100);

void BM_approximate_sine(benchmark::State& state) {
    GridDomain line({0.0}, {1.0}, {static_cast<int>(state.range(0))});
    TargetFunction target = TargetFunction::sinusoid_product({SinusoidMode{false, 1.0}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(approximate(target, line, 0.1, kLogistic, 0.8, 50));
    }
}
BENCHMARK(BM_approximate_sine)->Arg(65)->Arg(257)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
