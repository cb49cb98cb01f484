// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "splitedge/pipeline.hpp"

namespace splitedge {

enum class Objective { throughput, energy };

const char* to_string(Objective o);
Objective objective_from_string(std::string_view s);

/// Which encodings the optimizer may consider.
struct EncodingSet {
    bool none{true};
    bool lossless{true};
    bool lossy{true};

    static EncodingSet all() { return {}; }
    static EncodingSet only_none() { return {true, false, false}; }
};

struct OptimizeResult {
    PartitionPoint point{};
    PartitionReport report{};
};

/// Exhaustive search over all partition indices and allowed encodings.
/// Lossy candidates use select_qf(layer, max_loss_pct); layers without a
/// curve entry (or with no sample meeting the bound) only compete with the
/// encodings that remain. Ties resolve to the smaller index, then to the
/// cheaper encoding (none < lossless < lossy).
OptimizeResult optimize_partition(const NetworkSpec& net, const HardwareSpec& hw,
                                  const ChannelSpec& ch, const AccuracyCurves& curves,
                                  double max_loss_pct, Objective objective,
                                  EncodingSet allowed = EncodingSet::all(),
                                  CurveVariant variant = CurveVariant::original);

struct SweepCell {
    double bandwidth_bps{};
    double power_W{};
    OptimizeResult best_throughput{};
    OptimizeResult best_energy{};
};

struct SweepResult {
    std::vector<SweepCell> cells;  // bandwidth-major grid order

    static std::string csv_header();
    [[nodiscard]] std::string csv() const;
};

/// optimize_partition over every (bandwidth, power) grid cell, each treated
/// as a single-mode channel. Cells are independent; results are emitted in
/// grid order.
SweepResult sweep(const NetworkSpec& net, const HardwareSpec& hw, const AccuracyCurves& curves,
                  double max_loss_pct, const std::vector<double>& bandwidth_bps,
                  const std::vector<double>& power_W,
                  CurveVariant variant = CurveVariant::original);

}  // namespace splitedge
