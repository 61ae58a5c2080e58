#include <benchmark/benchmark.h>

#include "thetarough/theta.hpp"
#include "thetarough/weyl.hpp"

using namespace thetarough;

namespace {

const WeylParams kParams{0.61803398874989485, 1.4142135623730951, 0.25};

void BM_build_walk(benchmark::State& st) {
    const auto N = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(build_walk(kParams, N));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_build_walk)->RangeMultiplier(4)->Range(256, 1 << 18)->Complexity();

void BM_window_prefix(benchmark::State& st) {
    const auto N = static_cast<std::size_t>(st.range(0));
    const WeylWalk w = build_walk(kParams, N);
    for (auto _ : st) benchmark::DoNotOptimize(window_sums(w, N / 4, N));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_window_prefix)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

// J by the double sum, for comparison
void BM_window_naive(benchmark::State& st) {
    const auto N = static_cast<std::size_t>(st.range(0));
    const WeylWalk w = build_walk(kParams, N);
    for (auto _ : st) {
        cplx J{};
        for (std::size_t j = N / 4 + 1; j <= N; ++j)
            for (std::size_t i = N / 4 + 1; i < j; ++i) J += std::conj(w.zk(i)) * w.zk(j);
        benchmark::DoNotOptimize(J);
    }
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_window_naive)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_theta2_direct(benchmark::State& st) {
    const auto N = static_cast<std::size_t>(st.range(0));
    const GroupElement g1 = mirror_horocycle_lift(kParams, N), g2 = horocycle_lift(kParams, N);
    const PlaneFunction T = triangle_function(0.25, 1.0);
    for (auto _ : st) benchmark::DoNotOptimize(theta2_direct(T, g1, g2));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_theta2_direct)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
