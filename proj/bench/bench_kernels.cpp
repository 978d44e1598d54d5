#include <benchmark/benchmark.h>

#include "ordlab/indices.hpp"
#include "ordlab/oracle.hpp"
#include "ordlab/witness.hpp"

using namespace ordlab;

namespace {

void BM_VariationEnum(benchmark::State& st) {
    SimpleFn f = f_delta(Ordinal::omega_pow(Ordinal(4)));
    for (auto _ : st) benchmark::DoNotOptimize(max_variation_enum(f, static_cast<std::uint64_t>(st.range(0))).max);
}

void BM_VariationEnumSerial(benchmark::State& st) {
    SimpleFn f = f_delta(Ordinal::omega_pow(Ordinal(4)));
    for (auto _ : st)
        benchmark::DoNotOptimize(max_variation_enum_serial(f, static_cast<std::uint64_t>(st.range(0))).max);
}

std::vector<StepFn> witness_sequence(int n) {
    SimpleFn f = f_delta(Ordinal::omega_pow(Ordinal(2)));
    std::vector<StepFn> seq;
    for (int k = 0; k < n; ++k) seq.push_back(witness_stage(f, static_cast<std::uint64_t>(k)));
    return seq;
}

void BM_Criterion(benchmark::State& st) {
    auto seq = witness_sequence(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(b14_criterion_check(seq, Rational(1, 2), 4).pass);
}

void BM_CriterionSerial(benchmark::State& st) {
    auto seq = witness_sequence(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(b14_criterion_check_serial(seq, Rational(1, 2), 4).pass);
}

void BM_OracleSweep(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(oracle_sweep(static_cast<size_t>(st.range(0)), 1).checks);
}

void BM_OracleSweepSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(oracle_sweep_serial(static_cast<size_t>(st.range(0)), 1).checks);
}

}  // namespace

BENCHMARK(BM_VariationEnum)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VariationEnumSerial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Criterion)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CriterionSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSweep)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSweepSerial)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
