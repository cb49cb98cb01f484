// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "splitedge/featcodec.hpp"
#include "splitedge/synth.hpp"

using namespace splitedge;

namespace {

FeatureTensor make_tensor(std::int64_t side, double nonzero) {
    SynthSpec spec;
    spec.shape = Shape3{16, static_cast<std::uint32_t>(side), static_cast<std::uint32_t>(side)};
    spec.nonzero_ratio = nonzero;
    spec.dist = SynthSpec::Dist::exponential;
    spec.exp_rate = 0.02;
    spec.spatial_clustering = 1.0;
    spec.seed = 5;
    return generate(spec);
}

}  // namespace

static void BM_LosslessEncodeSparse(benchmark::State& state) {
    const FeatureTensor t = make_tensor(state.range(0), 0.15);
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_lossless(t));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * t.raw_bytes());
}
BENCHMARK(BM_LosslessEncodeSparse)->Arg(16)->Arg(32)->Arg(64);

static void BM_LosslessEncodeDense(benchmark::State& state) {
    const FeatureTensor t = make_tensor(state.range(0), 0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_lossless(t));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * t.raw_bytes());
}
BENCHMARK(BM_LosslessEncodeDense)->Arg(16)->Arg(32)->Arg(64);

static void BM_LosslessDecode(benchmark::State& state) {
    const FeatureTensor t = make_tensor(state.range(0), 0.15);
    const EncodedStream s = encode_lossless(t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decode_lossless(s));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * t.raw_bytes());
}
BENCHMARK(BM_LosslessDecode)->Arg(16)->Arg(32)->Arg(64);

static void BM_LossyEncode(benchmark::State& state) {
    const FeatureTensor t = make_tensor(32, 0.2);
    const int qf = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_lossy(t, qf));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * t.raw_bytes());
}
BENCHMARK(BM_LossyEncode)->Arg(10)->Arg(30)->Arg(90);

static void BM_LossyDecode(benchmark::State& state) {
    const FeatureTensor t = make_tensor(32, 0.2);
    const EncodedStream s = encode_lossy(t, 30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decode_lossy(s));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * t.raw_bytes());
}
BENCHMARK(BM_LossyDecode);

static void BM_FeatureStats(benchmark::State& state) {
    const FeatureTensor t = make_tensor(64, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(feature_stats(t));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * t.raw_bytes());
}
BENCHMARK(BM_FeatureStats);

BENCHMARK_MAIN();
