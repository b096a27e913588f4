#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "wearprompt/mask.hpp"
#include "wearprompt/metrics.hpp"
#include "wearprompt/poi.hpp"
#include "wearprompt/prompts.hpp"
#include "wearprompt/stats.hpp"

using namespace wearprompt;

namespace {

// A few overlapping ellipses on a square canvas.
BinaryMask blobs(int side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BinaryMask m(side, side);
    for (int k = 0; k < 4; ++k) {
        const double cr = side * (0.2 + 0.6 * u(rng)), cc = side * (0.2 + 0.6 * u(rng));
        const double a = side * (0.05 + 0.15 * u(rng)), b = side * (0.05 + 0.15 * u(rng));
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c) {
                const double dr = (r - cr) / a, dc = (c - cc) / b;
                if (dr * dr + dc * dc <= 1.0) m.set(r, c, true);
            }
    }
    return m;
}

BinaryMask noise(int side, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution on(density);
    BinaryMask m(side, side);
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) m.set(r, c, on(rng));
    return m;
}

void poi(benchmark::State& state, PoiMethod method) {
    const auto mask = blobs(static_cast<int>(state.range(0)), 7);
    PoiConfig cfg;
    cfg.method = method;
    for (auto _ : state) benchmark::DoNotOptimize(generate_prompt_points(mask, cfg));
    state.SetItemsProcessed(state.iterations() * mask.foreground_count());
}

void BM_PoiMS(benchmark::State& s) { poi(s, PoiMethod::MS); }
void BM_PoiCoGA(benchmark::State& s) { poi(s, PoiMethod::CoGA); }
void BM_PoiRCoGA(benchmark::State& s) { poi(s, PoiMethod::RCoGA); }

void BM_Erode(benchmark::State& state) {
    const auto mask = blobs(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(erode(mask, StructuringElement::Square3));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_Components(benchmark::State& state) {
    const auto mask = noise(static_cast<int>(state.range(0)), 0.45, 13);
    for (auto _ : state) benchmark::DoNotOptimize(connected_components(mask, Connectivity::Eight));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_Downsample(benchmark::State& state) {
    const auto mask = noise(1024, 0.01, 17);
    for (auto _ : state) benchmark::DoNotOptimize(downsample_maxpool(mask));
}

void BM_Score(benchmark::State& state) {
    const auto a = noise(1024, 0.3, 19), b = noise(1024, 0.3, 23);
    for (auto _ : state) benchmark::DoNotOptimize(score(a, b));
}

void BM_Anova(benchmark::State& state) {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<std::vector<double>> groups(5, std::vector<double>(static_cast<std::size_t>(state.range(0))));
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (auto& v : groups[g]) v = 0.1 * static_cast<double>(g) + n(rng);
    for (auto _ : state) benchmark::DoNotOptimize(anova_oneway(groups));
}

}  // namespace

BENCHMARK(BM_PoiMS)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PoiCoGA)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PoiRCoGA)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Erode)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Components)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Downsample)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Score)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Anova)->Arg(10)->Arg(1000);
BENCHMARK_MAIN();
