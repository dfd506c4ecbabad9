#include <benchmark/benchmark.h>

#include <random>

#include "quasiwave/mra.hpp"
#include "quasiwave/refine.hpp"

using namespace quasiwave;

namespace {

const FieldSpec kTau = tau_field();
const QuadRat kTheta = QuadRat::beta(kTau).pow(2);

void BM_QuadMul(benchmark::State& state) {
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> d(-1000, 1000);
    const QuadRat a(kTau, mpq_class(d(rng), 7), d(rng)), b(kTau, d(rng), mpq_class(d(rng), 11));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_QuadMul);

void BM_QuadSign(benchmark::State& state) {
    const QuadRat x(kTau, mpq_class(-1346269, 1), mpq_class(832040, 1));
    for (auto _ : state) benchmark::DoNotOptimize(x.sign());
}
BENCHMARK(BM_QuadSign);

void BM_FibonacciChain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_fibonacci_chain(-n, n));
}
BENCHMARK(BM_FibonacciChain)->Arg(100)->Arg(1000)->Arg(10000);

void BM_BSpline(benchmark::State& state) {
    const auto seq = generate_fibonacci_chain(-20, 20);
    const int s = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bspline(seq, 0, s));
}
BENCHMARK(BM_BSpline)->DenseRange(2, 5);

void BM_WaveletSystem(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    const auto seq = generate_fibonacci_chain(-30 - 15 * s, 30 + 15 * s);
    for (auto _ : state) benchmark::DoNotOptimize(build_wavelet_system(seq, kTheta, s));
}
BENCHMARK(BM_WaveletSystem)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_WaveletRefinement(benchmark::State& state) {
    const auto seq = generate_fibonacci_chain(-60, 60);
    const auto sys = build_wavelet_system(seq, kTheta, 2);
    for (auto _ : state) benchmark::DoNotOptimize(wavelet_scaling_equations(sys, seq));
}
BENCHMARK(BM_WaveletRefinement)->Unit(benchmark::kMillisecond);

void BM_LetterSweep(benchmark::State& state) {
    const auto seq = generate_fibonacci_chain(0, 2000);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_letter_counts(seq, n));
}
BENCHMARK(BM_LetterSweep)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

template <class T>
void round_trip(benchmark::State& state, T scale) {
    const auto seq = generate_fibonacci_chain(-40, 120);
    const Multiresolution m(seq, kTheta, 2, 0, static_cast<int>(state.range(0)));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-9, 9);
    std::vector<T> x(m.dim());
    for (auto& v : x) v = scale * T(d(rng));
    for (auto _ : state) benchmark::DoNotOptimize(m.reconstruct(m.decompose(x)));
}

void BM_RoundTripExact(benchmark::State& state) { round_trip<QuadRat>(state, QuadRat(kTau, mpq_class(1, 3), 1)); }
BENCHMARK(BM_RoundTripExact)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_RoundTripFloat(benchmark::State& state) { round_trip<double>(state, 0.5); }
BENCHMARK(BM_RoundTripFloat)->Arg(30)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_FrameBounds(benchmark::State& state) {
    const auto seq = generate_fibonacci_chain(-80, 160);
    const auto sys = build_wavelet_system(seq, kTheta, 2);
    const int w = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(wavelet_frame_bounds(sys, seq, {w}));
}
BENCHMARK(BM_FrameBounds)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
