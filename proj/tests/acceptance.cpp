// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: every release gate runs here, one pass/fail line per
// criterion. The binary exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "randomcfg.hpp"
#include "splitedge/dct.hpp"
#include "splitedge/featcodec.hpp"
#include "splitedge/planner.hpp"
#include "splitedge/synth.hpp"
#include "support.hpp"

using namespace splitedge;
using testsupport::data_file;

namespace {

int failures = 0;

struct Criterion {
    explicit Criterion(int id) : id_(id), start_(std::chrono::steady_clock::now()) {}

    void check(bool ok, const std::string& detail) {
        ok_ = ok_ && ok;
        if (!detail.empty()) {
            details_ += details_.empty() ? detail : "; " + detail;
        }
    }

    void finish(const std::string& title, double budget_s = 0.0) {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (budget_s > 0.0 && elapsed > budget_s) {
            ok_ = false;
            details_ += "; over time budget";
        }
        std::printf("criterion %d [%s] %s: %s (%.2fs)\n", id_, ok_ ? "PASS" : "FAIL",
                    title.c_str(), details_.c_str(), elapsed);
        if (!ok_) ++failures;
    }

    int id_;
    bool ok_ = true;
    std::string details_;
    std::chrono::steady_clock::time_point start_;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool in_band(double v, double center, double rel) {
    return v >= center * (1.0 - rel) && v <= center * (1.0 + rel);
}

std::string band_report(const char* name, double v, double center) {
    const bool ok = in_band(v, center, 0.15);
    return std::string(name) + " " + num(v) + (ok ? " in " : " NOT in ") + "[" +
           num(center * 0.85) + "," + num(center * 1.15) + "]";
}

FeatureTensor surrogate(double nonzero, std::uint64_t seed) {
    SynthSpec spec;
    spec.shape = Shape3{256, 13, 13};
    spec.nonzero_ratio = nonzero;
    spec.dist = SynthSpec::Dist::exponential;
    spec.exp_rate = 0.02;
    spec.spatial_clustering = 1.5;
    spec.seed = seed;
    return generate(spec);
}

void reference_dct_8x8(const double* in, double* out) {
    const double pi = std::acos(-1.0);
    for (int v = 0; v < 8; ++v) {
        for (int u = 0; u < 8; ++u) {
            double s = 0.0;
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    s += in[y * 8 + x] * std::cos((2 * x + 1) * u * pi / 16.0) *
                         std::cos((2 * y + 1) * v * pi / 16.0);
                }
            }
            const double au = u == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
            const double av = v == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
            out[v * 8 + u] = au * av * s;
        }
    }
}

// 1. Input-size reproduction.
void criterion_1(const NetworkSpec& net) {
    Criterion c(1);
    const std::uint64_t input_bytes = net.input_bytes();
    c.check(input_bytes == 309174, "input feature bytes " + std::to_string(input_bytes));
    const double rate_30fps = 30.0 * 8.0 * static_cast<double>(input_bytes);
    c.check(rate_30fps >= 70e6 && rate_30fps <= 75e6,
            "30 fps needs " + num(rate_30fps / 1e6) + " Mbps");
    c.finish("input-size reproduction", 1.0);
}

// 2. Lossless codec identity over 1,000 randomized tensors.
void criterion_2() {
    Criterion c(2);
    testsupport::Rng rng(0xACCE77);
    int bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Shape3 shape{static_cast<std::uint32_t>(rng.range(1, 64)),
                           static_cast<std::uint32_t>(rng.range(1, 32)),
                           static_cast<std::uint32_t>(rng.range(1, 32))};
        const FeatureTensor t = testsupport::random_tensor(rng, shape, rng.u01());
        if (!(decode_lossless(encode_lossless(t)) == t)) ++bad;
    }
    c.check(bad == 0, "1000 roundtrips, " + std::to_string(bad) + " mismatches");
    c.finish("lossless codec identity", 60.0);
}

// 3. Lossless ratio band and sparsity trend.
void criterion_3() {
    Criterion c(3);
    double prev = 1e18;
    bool monotone = true;
    double sparse_min = 1e18;
    for (int i = 1; i <= 9; ++i) {
        const double nz = 0.1 * i;
        const FeatureTensor t = surrogate(nz, 7000 + static_cast<std::uint64_t>(i));
        const double ratio = compression_ratio(t, encode_lossless(t));
        if (ratio > prev + 1e-9) monotone = false;
        if (nz <= 0.30001) sparse_min = std::min(sparse_min, ratio);
        prev = ratio;
    }
    c.check(sparse_min >= 3.0, "deep-layer regime ratio >= " + num(sparse_min));
    c.check(monotone, "monotone over 9-point sparsity sweep");
    c.finish("lossless ratio band");
}

// 4. Lossy QF monotonicity and DCT against the direct-summation oracle.
void criterion_4() {
    Criterion c(4);
    const std::vector<FeatureTensor> corpus = {surrogate(0.15, 21), surrogate(0.4, 22),
                                               surrogate(0.7, 23)};
    bool ratio_ok = true;
    bool error_ok = true;
    for (const FeatureTensor& t : corpus) {
        double prev_ratio = 1e18;
        double prev_err = 1e18;
        for (int qf : {10, 30, 50, 70, 90}) {
            const EncodedStream s = encode_lossy(t, qf);
            const FeatureTensor r = decode_lossy(s);
            const double ratio = compression_ratio(t, s);
            double err = 0.0;
            for (std::size_t i = 0; i < t.data.size(); ++i) {
                err = std::max(err, std::abs(double(t.data[i]) - double(r.data[i])));
            }
            if (ratio > prev_ratio + 1e-9) ratio_ok = false;
            if (err > prev_err + 1e-9) error_ok = false;
            prev_ratio = ratio;
            prev_err = err;
        }
    }
    c.check(ratio_ok, "ratio nonincreasing over QF {10..90}");
    c.check(error_ok, "reconstruction error nonincreasing as QF rises");

    testsupport::Rng rng(0xDC7);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        double in[64], fwd[64], ref[64];
        for (double& v : in) v = rng.u01() * 255.0 - 128.0;
        dct::forward_8x8(in, fwd);
        reference_dct_8x8(in, ref);
        double norm = 1.0;
        for (int i = 0; i < 64; ++i) norm = std::max(norm, std::abs(ref[i]));
        for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(fwd[i] - ref[i]) / norm);
    }
    c.check(worst <= 1e-9, "DCT vs direct summation rel err " + num(worst));
    c.finish("lossy QF monotonicity", 60.0);
}

// 5. Optimal-layer reproduction on the shipped calibrated config.
void criterion_5(const NetworkSpec& net, const HardwareSpec& hw, const ChannelSpec& ch,
                 const AccuracyCurves& curves) {
    Criterion c(5);
    const OptimizeResult none = optimize_partition(net, hw, ch, curves, 1.0,
                                                   Objective::throughput, EncodingSet::only_none());
    c.check(none.report.layer_name == "fc6", "no encoding -> " + none.report.layer_name);

    const OptimizeResult lossy_t =
        optimize_partition(net, hw, ch, curves, 1.0, Objective::throughput);
    c.check(lossy_t.report.layer_name == "conv5",
            "encoding at 1% (throughput) -> " + lossy_t.report.layer_name);

    const OptimizeResult lossy_e = optimize_partition(net, hw, ch, curves, 1.0, Objective::energy);
    c.check(lossy_e.report.layer_name == "conv5",
            "encoding at 1% (energy) -> " + lossy_e.report.layer_name);
    c.finish("optimal-layer reproduction");
}

// 6. Headline improvement ratios against the host and edge baselines.
void criterion_6(const NetworkSpec& net, const HardwareSpec& hw, const ChannelSpec& ch,
                 const AccuracyCurves& curves) {
    Criterion c(6);
    const int conv5 = static_cast<int>(net.index_of("conv5"));
    const QfChoice qc = select_qf(curves, "conv5", CurveVariant::finetuned, 1.0);
    const PartitionReport part = evaluate(net, hw, ch, PartitionPoint{conv5, Encoding::lossy, qc.qf},
                                          curves, CurveVariant::finetuned);
    const PartitionReport host =
        evaluate(net, hw, ch, PartitionPoint{-1, Encoding::none, 0}, curves);
    const PartitionReport edge = evaluate(
        net, hw, ch, PartitionPoint{static_cast<int>(net.layer_count()) - 1, Encoding::none, 0},
        curves);

    const double e_host = host.energy_per_frame_J / part.energy_per_frame_J;
    const double t_host = part.throughput_fps / host.throughput_fps;
    const double e_edge = edge.energy_per_frame_J / part.energy_per_frame_J;
    const double t_edge = part.throughput_fps / edge.throughput_fps;

    c.check(in_band(e_host, 15.3, 0.15), band_report("E_host", e_host, 15.3));
    c.check(in_band(t_host, 16.5, 0.15), band_report("T_host", t_host, 16.5));
    c.check(in_band(e_edge, 2.3, 0.15), band_report("E_edge", e_edge, 2.3));
    c.check(in_band(t_edge, 2.5, 0.15), band_report("T_edge", t_edge, 2.5));
    c.finish("headline ratios");
}

// 7. Bandwidth trend over the three transmitter modes.
void criterion_7(const NetworkSpec& net, const HardwareSpec& hw, const AccuracyCurves& curves) {
    Criterion c(7);
    const std::vector<double> bws{1e6, 2e6, 22e6};
    const std::vector<double> pws{0.0627, 0.099, 0.66};
    const SweepResult r = sweep(net, hw, curves, 1.0, bws, pws);
    bool nonincreasing = true;
    bool strict = true;
    for (std::size_t pi = 0; pi < pws.size(); ++pi) {
        std::vector<int> p_at_bw;
        for (std::size_t bi = 0; bi < bws.size(); ++bi) {
            p_at_bw.push_back(r.cells[bi * pws.size() + pi].best_throughput.point.index);
        }
        for (std::size_t bi = 1; bi < p_at_bw.size(); ++bi) {
            if (p_at_bw[bi] > p_at_bw[bi - 1]) nonincreasing = false;
        }
        if (!(p_at_bw.back() < p_at_bw.front())) strict = false;
    }
    c.check(nonincreasing, "throughput-optimal layer nonincreasing in bandwidth");
    c.check(strict, "22 Mbps optimum strictly earlier than 1 Mbps");
    c.finish("bandwidth trend");
}

// 8. Planner equals the independent brute-force enumerator.
void criterion_8() {
    Criterion c(8);
    testsupport::Rng rng(0x04AC1Eull);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const testsupport::RandomConfig cfg = testsupport::random_config(rng);
        for (Objective obj : {Objective::throughput, Objective::energy}) {
            const OptimizeResult got =
                optimize_partition(cfg.net, cfg.hw, cfg.ch, cfg.curves, cfg.max_loss, obj);
            const oracle::Pick want =
                oracle::optimize(cfg.net, cfg.hw, cfg.ch.mode().datarate_bps,
                                 cfg.ch.mode().power_W, cfg.curves, cfg.max_loss, obj);
            const bool same = got.point.index == want.p && got.point.encoding == want.encoding &&
                              (want.encoding != Encoding::lossy || got.point.qf == want.qf);
            if (!same) ++mismatches;
        }
    }
    c.check(mismatches == 0,
            "100 random configs x 2 objectives, " + std::to_string(mismatches) + " mismatches");
    c.finish("planner-oracle equivalence", 60.0);
}

}  // namespace

int main() {
    const NetworkSpec net = NetworkSpec::load(data_file("alexnet.net"));
    const HardwareSpec hw = HardwareSpec::load(data_file("edge28nm.hw"));
    const ChannelSpec ch = ChannelSpec::load(data_file("nlink.ch"));
    const AccuracyCurves curves = AccuracyCurves::load(data_file("alexnet.curves"));

    criterion_1(net);
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5(net, hw, ch, curves);
    criterion_6(net, hw, ch, curves);
    criterion_7(net, hw, curves);
    criterion_8();

    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures;
}
