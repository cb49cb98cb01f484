// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference evaluator, written against the model contract and
// kept independent of the pipeline/planner implementation: layer demand is
// recomputed from the layer parameters here, and the stage costs, candidate
// enumeration and tie-break are coded from scratch.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitedge/curves.hpp"
#include "splitedge/hwmodel.hpp"
#include "splitedge/netmodel.hpp"
#include "splitedge/planner.hpp"

namespace oracle {

struct Cost {
    double fps{};
    double joules{};
};

struct Pick {
    int p{};
    splitedge::Encoding encoding{};
    int qf{};
    Cost cost{};
};

// Demand recomputed from layer parameters (shapes come from the network's
// propagation, which has its own enumeration oracle in the netmodel tests).
struct Demand {
    double macs{};
    double weight_bytes{};
    double buffer_bytes{};
    double out_bytes{};
};

inline Demand layer_demand(const splitedge::NetworkSpec& net, std::size_t i) {
    using splitedge::LayerKind;
    const splitedge::LayerSpec& l = net.layers()[i];
    const splitedge::Shape3 in = i == 0 ? net.input_shape() : net.output_shape(i - 1);
    const splitedge::Shape3 out = net.output_shape(i);
    const double bytes_per = net.feature_bits() / 8.0;

    Demand d;
    d.out_bytes = static_cast<double>(out.elems()) * bytes_per;
    d.buffer_bytes = (static_cast<double>(in.elems()) + static_cast<double>(out.elems())) * bytes_per;
    if (l.kind == LayerKind::conv) {
        const double kernel = static_cast<double>(l.kernel_h) * l.kernel_w * in.c;
        d.macs = kernel * out.c * out.h * out.w;
        d.weight_bytes = (kernel * out.c + out.c) * bytes_per;
    } else if (l.kind == LayerKind::fc) {
        const double n_in = static_cast<double>(in.elems());
        d.macs = n_in * l.out_features;
        d.weight_bytes = (n_in * l.out_features + l.out_features) * bytes_per;
    }
    return d;
}

inline Cost evaluate(const splitedge::NetworkSpec& net, const splitedge::HardwareSpec& hw,
                     double datarate_bps, double tx_power_W, int p, splitedge::Encoding enc,
                     double ratio) {
    double macs = 0.0, weights = 0.0, buffer = 0.0;
    for (int i = 0; i <= p; ++i) {
        const Demand d = layer_demand(net, static_cast<std::size_t>(i));
        macs += d.macs;
        weights += d.weight_bytes;
        buffer += d.buffer_bytes;
    }
    const double raw =
        p < 0 ? static_cast<double>(net.input_bytes())
              : layer_demand(net, static_cast<std::size_t>(p)).out_bytes;
    const double payload = raw / ratio;

    const double compressed = weights / hw.weight_compression_ratio;
    const double codec_bps = hw.codec_bytes_per_cycle * hw.clock_hz;
    const double stage1_lat =
        std::max(macs / (hw.mac_units * hw.clock_hz), compressed / hw.dram_bandwidth_Bps);
    const double stage1_energy = macs * hw.energy_per_mac +
                                 compressed * (hw.dram_energy_per_32b / 4.0) +
                                 (compressed / codec_bps) * hw.codec_power_W +
                                 buffer * hw.buffer_energy_per_byte;

    const double enc_lat = enc == splitedge::Encoding::none ? 0.0 : raw / codec_bps;
    const double enc_energy = enc_lat * hw.codec_power_W;
    const double tx_lat = 8.0 * payload / datarate_bps;
    const double tx_energy = tx_lat * tx_power_W;

    Cost c;
    c.fps = 1.0 / std::max(stage1_lat, enc_lat + tx_lat);
    c.joules = stage1_energy + enc_energy + tx_energy;
    return c;
}

// Smallest sampled qf meeting the loss bound, scanned by hand.
inline std::optional<splitedge::QfChoice> pick_qf(const splitedge::AccuracyCurves& curves,
                                                  const std::string& layer,
                                                  splitedge::CurveVariant variant,
                                                  double max_loss) {
    if (!curves.has_entry(layer, variant)) return std::nullopt;
    const splitedge::CurveEntry& e = curves.entry(layer, variant);
    for (const splitedge::CurveSample& s : e.samples) {
        if (s.accuracy_loss_pct <= max_loss) return splitedge::QfChoice{s.qf, s.compression_ratio};
    }
    return std::nullopt;
}

inline Pick optimize(const splitedge::NetworkSpec& net, const splitedge::HardwareSpec& hw,
                     double datarate_bps, double tx_power_W,
                     const splitedge::AccuracyCurves& curves, double max_loss,
                     splitedge::Objective objective,
                     splitedge::CurveVariant variant = splitedge::CurveVariant::original) {
    using splitedge::Encoding;
    bool have = false;
    Pick best;
    const int layer_count = static_cast<int>(net.layer_count());
    for (int p = -1; p < layer_count; ++p) {
        const std::string layer = p < 0 ? "input" : net.layers()[p].name;
        struct Candidate {
            Encoding enc;
            int qf;
            double ratio;
        };
        std::vector<Candidate> cands;
        cands.push_back(Candidate{Encoding::none, 0, 1.0});
        if (curves.has_entry(layer, variant)) {
            const splitedge::CurveEntry& e = curves.entry(layer, variant);
            if (e.lossless_ratio > 0.0) {
                cands.push_back(Candidate{Encoding::lossless, 0, e.lossless_ratio});
            }
            if (auto qc = pick_qf(curves, layer, variant, max_loss)) {
                cands.push_back(Candidate{Encoding::lossy, qc->qf, qc->compression_ratio});
            }
        }
        for (const Candidate& c : cands) {
            const Cost cost = evaluate(net, hw, datarate_bps, tx_power_W, p, c.enc, c.ratio);
            const bool better = objective == splitedge::Objective::throughput
                                    ? cost.fps > best.cost.fps
                                    : cost.joules < best.cost.joules;
            if (!have || better) {
                best = Pick{p, c.enc, c.qf, cost};
                have = true;
            }
        }
    }
    return best;
}

}  // namespace oracle
