// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "splitedge/planner.hpp"

using namespace splitedge;

namespace {

std::filesystem::path data_file(const char* name) {
    return std::filesystem::path(SPLITEDGE_DATA_DIR) / name;
}

struct Fixture {
    NetworkSpec net = NetworkSpec::load(data_file("alexnet.net"));
    HardwareSpec hw = HardwareSpec::load(data_file("edge28nm.hw"));
    ChannelSpec ch = ChannelSpec::load(data_file("nlink.ch"));
    AccuracyCurves curves = AccuracyCurves::load(data_file("alexnet.curves"));
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

}  // namespace

static void BM_LoadNetwork(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(NetworkSpec::load(data_file("alexnet.net")));
    }
}
BENCHMARK(BM_LoadNetwork);

static void BM_CumulativeDemand(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.net.cumulative_demand(f.net.layer_count() - 1));
    }
}
BENCHMARK(BM_CumulativeDemand);

static void BM_EvaluatePartition(benchmark::State& state) {
    const Fixture& f = fixture();
    const PartitionPoint pt{static_cast<int>(f.net.index_of("conv5")), Encoding::lossy, 30};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(f.net, f.hw, f.ch, pt, f.curves));
    }
}
BENCHMARK(BM_EvaluatePartition);

static void BM_OptimizePartition(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            optimize_partition(f.net, f.hw, f.ch, f.curves, 1.0, Objective::throughput));
    }
}
BENCHMARK(BM_OptimizePartition);

static void BM_Sweep3x3(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sweep(f.net, f.hw, f.curves, 1.0, {1e6, 2e6, 22e6}, {0.0627, 0.099, 0.66}));
    }
}
BENCHMARK(BM_Sweep3x3);

BENCHMARK_MAIN();
