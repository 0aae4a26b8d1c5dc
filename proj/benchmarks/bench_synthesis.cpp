#include <benchmark/benchmark.h>

#include "trisynth/csd.hpp"
#include "trisynth/synthesis.hpp"

using namespace trisynth;

namespace {

void BM_CsdGeneral(benchmark::State& state) {
    const Index dim = state.range(0);
    const CMatrix w = haar_random_unitary(dim, 1);
    for (auto _ : state) {
        CSDFactors f = csd_general(w, dim / 3);
        benchmark::DoNotOptimize(f);
    }
    state.SetComplexityN(dim);
}
BENCHMARK(BM_CsdGeneral)->Arg(9)->Arg(27)->Arg(81)->Complexity();

void BM_TernaryCsd(benchmark::State& state) {
    const Index dim = state.range(0);
    const CMatrix w = haar_random_unitary(dim, 2);
    for (auto _ : state) {
        TernaryCSDFactors f = ternary_csd(w);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_TernaryCsd)->Arg(9)->Arg(27)->Arg(81);

void BM_SynthesizeStructured(benchmark::State& state) {
    const auto qutrits = static_cast<unsigned>(state.range(0));
    const CMatrix w = haar_random_unitary(pow3(qutrits), 3);
    for (auto _ : state) {
        Circuit c = synthesize_structured(w);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_SynthesizeStructured)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LowerTwoQutrit(benchmark::State& state) {
    const CMatrix w = haar_random_unitary(9, 4);
    const Circuit structured = synthesize_structured(w);
    for (auto _ : state) {
        Circuit c = lower_circuit(structured, LoweringLevel::elementary);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_LowerTwoQutrit);

void BM_CircuitToMatrix(benchmark::State& state) {
    const auto qutrits = static_cast<unsigned>(state.range(0));
    const CMatrix w = haar_random_unitary(pow3(qutrits), 5);
    const Circuit c = synthesize_structured(w);
    for (auto _ : state) {
        CMatrix m = circuit_to_matrix(c);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_CircuitToMatrix)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ApplyStatevector(benchmark::State& state) {
    const auto qutrits = static_cast<unsigned>(state.range(0));
    const CMatrix w = haar_random_unitary(9, 6);
    Circuit c{qutrits, {}};
    // 60 two-qutrit gates across the register
    for (unsigned i = 0; i < 60; ++i) {
        Matrix3 u;
        u = haar_random_unitary(3, 100 + i);
        c.gates.push_back(MSControlled{i % qutrits, (i + 1) % qutrits, u});
    }
    StateVector s = StateVector::basis(pow3(qutrits), 0);
    for (auto _ : state) {
        StateVector out = apply(c, s);
        benchmark::DoNotOptimize(out);
    }
    state.SetComplexityN(pow3(qutrits));
}
BENCHMARK(BM_ApplyStatevector)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Complexity();

}  // namespace

BENCHMARK_MAIN();
