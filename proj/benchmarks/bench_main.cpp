#include <benchmark/benchmark.h>

#include <vector>

#include "lhp/functionals.hpp"
#include "lhp/geometry.hpp"
#include "lhp/limit_law.hpp"
#include "lhp/sampling.hpp"

namespace {

lhp::ModelConfig model(int d, double lambda, double R) {
    lhp::ModelConfig c;
    c.d = d;
    c.lambda = lambda;
    c.R = R;
    return c;
}

void BM_SectionVolume(benchmark::State& state) {
    const lhp::SectionVolume volume(model(static_cast<int>(state.range(0)), 0.5, 8.0));
    double s = -7.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(volume(s));
        s = s > 7.9 ? -7.9 : s + 0.013;
    }
}
BENCHMARK(BM_SectionVolume)->Arg(2)->Arg(3)->Arg(5);

void BM_SamplerSetup(benchmark::State& state) {
    const lhp::ModelConfig c = model(static_cast<int>(state.range(0)), 0.3, 6.0);
    for (auto _ : state) benchmark::DoNotOptimize(lhp::PositionSampler(c));
}
BENCHMARK(BM_SamplerSetup)->Arg(2)->Arg(4);

void BM_Quantile(benchmark::State& state) {
    const lhp::PositionSampler sampler(model(static_cast<int>(state.range(0)), 0.3, 6.0));
    double p = 0.0005;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.quantile(p));
        p = p > 0.999 ? 0.0005 : p + 0.000731;
    }
}
BENCHMARK(BM_Quantile)->Arg(2)->Arg(4);

void BM_SampleProcess(benchmark::State& state) {
    const lhp::ProcessSampler sampler(model(3, 0.5, static_cast<double>(state.range(0))));
    std::vector<double> s;
    std::uint64_t i = 0;
    for (auto _ : state) {
        sampler.sample_positions(7, i++, s);
        benchmark::DoNotOptimize(s.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * sampler.mean()));
}
BENCHMARK(BM_SampleProcess)->Arg(3)->Arg(6);

void BM_CumulantIntegral(benchmark::State& state) {
    const lhp::ModelConfig c = model(4, 0.3, 5.0);
    for (auto _ : state) benchmark::DoNotOptimize(lhp::cumulant_integral(c, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CumulantIntegral)->Arg(2)->Arg(4);

void BM_CharacteristicFunction(benchmark::State& state) {
    const lhp::LimitLawSpec spec = lhp::limit_law(static_cast<int>(state.range(0)), 0.4);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lhp::characteristic_function(spec, t));
        t = t > 20.0 ? 0.1 : t + 0.37;
    }
}
BENCHMARK(BM_CharacteristicFunction)->Arg(4)->Arg(6);

void BM_SampleLimit(benchmark::State& state) {
    const lhp::LimitLawSpec spec = lhp::limit_law(4, 0.4);
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(lhp::sample_limit(spec, 1000, seed++, 1));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SampleLimit);

}  // namespace

BENCHMARK_MAIN();
