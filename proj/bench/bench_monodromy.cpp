#include <benchmark/benchmark.h>

#include "gml/connect.hpp"
#include "gml/monodromy.hpp"

using namespace gml;

namespace {

FuchsianSystemT<Complex> fixture() {
    CurveParams c(rat(2, 1), rat(3, 1), rat(5, 1));
    std::array<Rational, 3> z{rat(5, 2), rat(4, 1), rat(9, 2)};
    std::array<Rational, 3> cc{rat(1, 3), rat(-1, 2), rat(1, 4)};
    return to_complex(universal_connection(c, ExponentSchemeT<Rational>::half(), z, cc));
}

void BM_full_rep(benchmark::State& state) {
    auto sys = fixture();
    auto loops = default_loops(sys);
    for (auto _ : state) benchmark::DoNotOptimize(full_rep(sys, loops));
}

void BM_full_rep_serial(benchmark::State& state) {
    auto sys = fixture();
    auto loops = default_loops(sys);
    for (auto _ : state) benchmark::DoNotOptimize(full_rep_serial(sys, loops));
}

void BM_transport_single_loop(benchmark::State& state) {
    auto sys = fixture();
    auto loops = default_loops(sys);
    for (auto _ : state) benchmark::DoNotOptimize(transport(sys, loops[2].path));
}

}  // namespace

BENCHMARK(BM_full_rep)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_full_rep_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_transport_single_loop)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
