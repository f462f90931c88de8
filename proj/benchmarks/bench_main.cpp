#include <benchmark/benchmark.h>

#include <random>

#include "corostab/numeric.hpp"
#include "corostab/protocols.hpp"
#include "corostab/stability.hpp"

using namespace corostab;

namespace {

MaterialModel exp_hencky() {
    return instantiate_model(ModelKind::ExpHencky, {{"mu", 1}, {"lambda", 2}, {"k", 1}, {"khat", 1}});
}

std::vector<SymTensor3> random_spd(std::size_t count) {
    std::mt19937_64 rng(1);
    std::vector<SymTensor3> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double a = numeric::uniform(rng, -0.5, 0.5);
        const double b = numeric::uniform(rng, -0.5, 0.5);
        const double c = numeric::uniform(rng, -0.5, 0.5);
        out.push_back(exp_sym(SymTensor3(a, b, c, 0.5 * b, 0.5 * c, 0.5 * a)));
    }
    return out;
}

void BM_EigSym(benchmark::State& state) {
    const auto inputs = random_spd(64);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_sym(inputs[i++ % inputs.size()]));
    }
}
BENCHMARK(BM_EigSym);

void BM_LogSpd(benchmark::State& state) {
    const auto inputs = random_spd(64);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_spd(inputs[i++ % inputs.size()]));
    }
}
BENCHMARK(BM_LogSpd);

void BM_TstsTangent(benchmark::State& state) {
    const MaterialModel m = exp_hencky();
    const auto inputs = random_spd(16);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tsts_tangent(m, inputs[i++ % inputs.size()]));
    }
}
BENCHMARK(BM_TstsTangent);

void BM_LateralClosure(benchmark::State& state) {
    const MaterialModel m = exp_hencky();
    const Protocol uniaxial(ProtocolKind::Uniaxial, Regime::Compressible);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lateral_closure(m, uniaxial, 2.5));
    }
}
BENCHMARK(BM_LateralClosure);

void BM_Sweep(benchmark::State& state) {
    const MaterialModel m = exp_hencky();
    const Protocol uniaxial(ProtocolKind::Uniaxial, Regime::Compressible);
    SweepOptions options;
    options.cold = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(m, uniaxial, GridSpec{0.5, 4.0, 200}, options));
    }
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LhProbe(benchmark::State& state) {
    const MaterialModel m = exp_hencky();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lh_ellipticity_probe(m, StretchState(1.5, 0.9, 1.2), 200, 20));
    }
}
BENCHMARK(BM_LhProbe)->Unit(benchmark::kMillisecond);

void BM_RegionScan(benchmark::State& state) {
    const MaterialModel m = exp_hencky();
    ScanOptions options;
    options.grid = {0.5, 3.0, 5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(region_scan(m, options));
    }
}
BENCHMARK(BM_RegionScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
