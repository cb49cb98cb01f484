// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "splitedge/curves.hpp"
#include "splitedge/hwmodel.hpp"
#include "splitedge/netmodel.hpp"

namespace splitedge {

enum class Encoding { none, lossless, lossy };

const char* to_string(Encoding e);
Encoding encoding_from_string(std::string_view s);

/// Partition choice: the edge runs layers 0..=index and transmits that
/// layer's output. index -1 is the host-inference baseline (the encoded
/// input image is transmitted); index L-1 is the edge-inference baseline.
struct PartitionPoint {
    int index{-1};
    Encoding encoding{Encoding::none};
    int qf{};  // meaningful for lossy only, 1..100
};

enum class Bottleneck { inference, transmission };

struct PartitionReport {
    PartitionPoint point{};
    std::string layer_name;     // "input" for index -1
    double payload_bytes{};
    StageCost inference{};      // stage 1
    StageCost encode{};         // stage 2, codec part
    StageCost tx{};             // stage 2, transmit part
    double throughput_fps{};
    double energy_per_frame_J{};
    Bottleneck bottleneck{Bottleneck::transmission};

    [[nodiscard]] double stage2_latency_s() const {
        return encode.latency_s + tx.latency_s;
    }

    static std::string csv_header();
    [[nodiscard]] std::string csv_row(const std::string& network) const;
};

/// Evaluates one partition under the two-stage pipeline rule: stage 1 runs
/// inference for layers 0..=p, stage 2 encodes and transmits layer p's
/// output; steady-state throughput is 1 / max(stage latencies).
///
/// The payload is the layer's raw feature bytes divided by the compression
/// ratio of the chosen encoding: 1 for none, the curve's lossless ratio for
/// lossless, and the ratio sampled at `qf` for lossy.
PartitionReport evaluate(const NetworkSpec& net, const HardwareSpec& hw, const ChannelSpec& ch,
                         const PartitionPoint& pt, const AccuracyCurves& curves,
                         CurveVariant variant = CurveVariant::original);

}  // namespace splitedge
