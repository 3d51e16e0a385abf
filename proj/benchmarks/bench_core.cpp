#include <benchmark/benchmark.h>

#include "relnet/entropy.hpp"
#include "relnet/model.hpp"
#include "relnet/montecarlo.hpp"
#include "relnet/rng.hpp"

using namespace relnet;

namespace {

Model disk_model() {
    return Model(Window(5.0), PathLoss::min_power(1.0, 4.0), QosMap::min_cap(1.0));
}

PointConfig sample_config(std::size_t n, double lambda) {
    IntensitySpec mu = IntensitySpec::uniform_disk(5.0, lambda);
    SplitMix64 rng(7);
    PointConfig cfg;
    cfg.lambda = lambda;
    cfg.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) cfg.points.push_back(mu.sample(rng));
    return cfg;
}

} // namespace

static void BM_InterferenceSum(benchmark::State& state) {
    Model m = disk_model();
    PointConfig cfg = sample_config(static_cast<std::size_t>(state.range(0)), 50.0);
    for (auto _ : state) benchmark::DoNotOptimize(m.interference({0.0, 0.0}, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InterferenceSum)->Arg(1024)->Arg(4096);

static void BM_QosTableDirectUplink(benchmark::State& state) {
    Model m = disk_model();
    PointConfig cfg = sample_config(static_cast<std::size_t>(state.range(0)), 50.0);
    for (auto _ : state) {
        QosTable t = qos_table(m, cfg, {false, true, false, false}, ThresholdScale::RawSir);
        benchmark::DoNotOptimize(t.ch[ChUpDir].data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QosTableDirectUplink)->Arg(4096);

static void BM_QosTableAllChannels(benchmark::State& state) {
    Model m = disk_model();
    PointConfig cfg = sample_config(static_cast<std::size_t>(state.range(0)), 10.0);
    for (auto _ : state) {
        QosTable t = qos_table(m, cfg, {true, true, true, true}, ThresholdScale::Qos);
        benchmark::DoNotOptimize(t.ch[ChUp].data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_QosTableAllChannels)->Arg(256)->Arg(1024);

static void BM_EstimateDirectUplink(benchmark::State& state) {
    Model m = disk_model();
    IntensitySpec mu = IntensitySpec::uniform_disk(5.0, 50.0);
    FrustrationSpec fs;
    fs.scale = ThresholdScale::RawSir;
    fs.ch[ChUpDir].enabled = true;
    fs.ch[ChUpDir].c = 2.6e-4;
    fs.ch[ChUpDir].b = 7.85;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        EstimateOptions opts;
        opts.runs = 32;
        opts.seed = seed++;
        EstimateResult r = estimate_probability(m, mu, fs, opts);
        benchmark::DoNotOptimize(r.hits);
    }
    state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_EstimateDirectUplink);

static void BM_RelEntropy(benchmark::State& state) {
    auto lay = CellLayout::triadic(Window(5.0), 4);
    SpatialMeasure mu = SpatialMeasure::disk_lebesgue(lay, 5.0);
    SpatialMeasure nu = mu;
    SplitMix64 rng(3);
    for (double& v : nu.mass) v *= 0.5 + rng.uniform01();
    for (auto _ : state) benchmark::DoNotOptimize(rel_entropy(nu, mu));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(lay->size()));
}
BENCHMARK(BM_RelEntropy);

static void BM_SamplePoisson(benchmark::State& state) {
    IntensitySpec mu = IntensitySpec::uniform_disk(5.0, 50.0);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        PointConfig cfg = sample_poisson(mu, seed++);
        benchmark::DoNotOptimize(cfg.points.data());
    }
}
BENCHMARK(BM_SamplePoisson);

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
