// SPDX-License-Identifier: Apache-2.0
#include "splitedge/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace splitedge {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

const char* to_string(Encoding e) {
    switch (e) {
        case Encoding::none: return "none";
        case Encoding::lossless: return "lossless";
        case Encoding::lossy: return "lossy";
    }
    return "?";
}

Encoding encoding_from_string(std::string_view s) {
    if (s == "none") return Encoding::none;
    if (s == "lossless") return Encoding::lossless;
    if (s == "lossy") return Encoding::lossy;
    throw ParseError("unknown encoding '" + std::string(s) + "'");
}

std::string PartitionReport::csv_header() {
    return "network,p,encoding,qf,payload_bytes,t_inf_s,t_tx_s,fps,J_per_frame,bottleneck";
}

std::string PartitionReport::csv_row(const std::string& network) const {
    std::string row = network;
    row += ',' + std::to_string(point.index);
    row += ',';
    row += to_string(point.encoding);
    row += ',' + std::to_string(point.encoding == Encoding::lossy ? point.qf : 0);
    row += ',' + fmt(payload_bytes);
    row += ',' + fmt(inference.latency_s);
    row += ',' + fmt(stage2_latency_s());
    row += ',' + fmt(throughput_fps);
    row += ',' + fmt(energy_per_frame_J);
    row += ',';
    row += bottleneck == Bottleneck::inference ? "inference" : "transmission";
    return row;
}

PartitionReport evaluate(const NetworkSpec& net, const HardwareSpec& hw, const ChannelSpec& ch,
                         const PartitionPoint& pt, const AccuracyCurves& curves,
                         CurveVariant variant) {
    const int layer_count = static_cast<int>(net.layer_count());
    if (pt.index < -1 || pt.index >= layer_count) {
        throw ShapeError("partition index " + std::to_string(pt.index) + " out of range");
    }
    if (pt.encoding == Encoding::lossy && (pt.qf < 1 || pt.qf > 100)) {
        throw CurveError("lossy partition requires qf within 1..100");
    }

    PartitionReport rep;
    rep.point = pt;
    rep.layer_name = pt.index < 0 ? "input" : net.layers()[pt.index].name;

    const std::uint64_t raw_bytes =
        pt.index < 0 ? net.input_bytes()
                     : net.layer_demand(static_cast<std::size_t>(pt.index)).out_feature_bytes;

    double ratio = 1.0;
    switch (pt.encoding) {
        case Encoding::none:
            break;
        case Encoding::lossless: {
            const CurveEntry& e = curves.entry(rep.layer_name, variant);
            if (!e.has_lossless()) {
                throw CurveError("layer '" + rep.layer_name + "': no lossless curve point");
            }
            ratio = e.lossless_ratio;
            break;
        }
        case Encoding::lossy:
            ratio = curves.entry(rep.layer_name, variant).ratio_at(pt.qf);
            break;
    }
    rep.payload_bytes = static_cast<double>(raw_bytes) / ratio;

    // stage 1: edge inference over layers 0..=p (empty for the host baseline)
    if (pt.index >= 0) {
        std::vector<LayerDemand> demands;
        demands.reserve(static_cast<std::size_t>(pt.index) + 1);
        for (int i = 0; i <= pt.index; ++i) {
            demands.push_back(net.layer_demand(static_cast<std::size_t>(i)));
        }
        rep.inference = inference_cost(hw, demands);
    }

    // stage 2: encode (when an encoder runs) + transmit
    if (pt.encoding != Encoding::none) {
        rep.encode = encode_cost(hw, static_cast<double>(raw_bytes), rep.payload_bytes);
    }
    rep.tx = tx_cost(ch, rep.payload_bytes);

    const double stage2 = rep.encode.latency_s + rep.tx.latency_s;
    rep.throughput_fps = 1.0 / std::max(rep.inference.latency_s, stage2);
    rep.energy_per_frame_J = rep.inference.energy_J + rep.encode.energy_J + rep.tx.energy_J;
    rep.bottleneck =
        rep.inference.latency_s >= stage2 ? Bottleneck::inference : Bottleneck::transmission;
    return rep;
}

}  // namespace splitedge
