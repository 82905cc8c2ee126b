#include <benchmark/benchmark.h>

#include "jetdiff/linalg.hpp"
#include "jetdiff/parse.hpp"
#include "jetdiff/transitions.hpp"

namespace {

using namespace jetdiff;

void BM_InvariantBasis(benchmark::State& state) {
    const JetSpec spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const int weight = static_cast<int>(state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(invariant_basis(spec, weight));
}
BENCHMARK(BM_InvariantBasis)
    ->Args({2, 2, 3})
    ->Args({2, 2, 6})
    ->Args({2, 3, 6})
    ->Args({2, 4, 8})
    ->Args({3, 3, 5})
    ->Unit(benchmark::kMillisecond);

void BM_ExactVsModularRank(benchmark::State& state) {
    const auto sys = invariance_system(JetSpec(2, 4), static_cast<int>(state.range(0)));
    const bool modular = state.range(1) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(modular ? rank_modular_check(sys.matrix) : rank(sys.matrix));
    state.counters["rows"] = static_cast<double>(sys.matrix.rows());
    state.counters["cols"] = static_cast<double>(sys.matrix.cols());
}
BENCHMARK(BM_ExactVsModularRank)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ActReparamFormal(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const JetPoint f = JetPoint::formal(JetSpec(2, k));
    const ReparamJet phi = ReparamJet::formal(k, false);
    for (auto _ : state) benchmark::DoNotOptimize(act_reparam(f, phi));
}
BENCHMARK(BM_ActReparamFormal)->DenseRange(1, 4);

void BM_DifferentialTransition(benchmark::State& state) {
    const auto space = invariant_basis(JetSpec(2, static_cast<int>(state.range(0))), static_cast<int>(state.range(1)));
    const TargetMap psi = parse_map("w1 = z1 + z2^2; w2 = z2 + z1^2 - z1*z2", 2);
    const std::vector<Rational> x = {Rational(1, 2), Rational(-1, 3)};
    for (auto _ : state) benchmark::DoNotOptimize(differential_transition(space, psi, x));
}
BENCHMARK(BM_DifferentialTransition)->Args({2, 3})->Args({2, 6})->Args({3, 5})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
