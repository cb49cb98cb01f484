// SPDX-License-Identifier: Apache-2.0
#include "splitedge/planner.hpp"

#include <cstdio>

namespace splitedge {

namespace {

bool strictly_better(Objective obj, const PartitionReport& candidate,
                     const PartitionReport& best) {
    if (obj == Objective::throughput) {
        return candidate.throughput_fps > best.throughput_fps;
    }
    return candidate.energy_per_frame_J < best.energy_per_frame_J;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

const char* to_string(Objective o) {
    return o == Objective::throughput ? "throughput" : "energy";
}

Objective objective_from_string(std::string_view s) {
    if (s == "throughput") return Objective::throughput;
    if (s == "energy") return Objective::energy;
    throw ParseError("unknown objective '" + std::string(s) + "'");
}

OptimizeResult optimize_partition(const NetworkSpec& net, const HardwareSpec& hw,
                                  const ChannelSpec& ch, const AccuracyCurves& curves,
                                  double max_loss_pct, Objective objective, EncodingSet allowed,
                                  CurveVariant variant) {
    bool have_best = false;
    OptimizeResult best;

    const int layer_count = static_cast<int>(net.layer_count());
    for (int p = -1; p < layer_count; ++p) {
        const std::string layer = p < 0 ? "input" : net.layers()[p].name;
        const bool has_curve = curves.has_entry(layer, variant);

        // Candidates in tie-break order: none, lossless, lossy. A candidate
        // replaces the incumbent only when strictly better, so equal-cost
        // points resolve to the smaller index, then the cheaper encoding.
        std::vector<PartitionPoint> candidates;
        if (allowed.none) {
            candidates.push_back(PartitionPoint{p, Encoding::none, 0});
        }
        if (allowed.lossless && has_curve && curves.entry(layer, variant).has_lossless()) {
            candidates.push_back(PartitionPoint{p, Encoding::lossless, 0});
        }
        if (allowed.lossy && has_curve) {
            try {
                const QfChoice qc = select_qf(curves, layer, variant, max_loss_pct);
                candidates.push_back(PartitionPoint{p, Encoding::lossy, qc.qf});
            } catch (const CurveError&) {
                // no sampled qf meets the loss bound at this layer
            }
        }

        for (const PartitionPoint& pt : candidates) {
            PartitionReport rep = evaluate(net, hw, ch, pt, curves, variant);
            if (!have_best || strictly_better(objective, rep, best.report)) {
                best.point = pt;
                best.report = std::move(rep);
                have_best = true;
            }
        }
    }

    if (!have_best) {
        throw CurveError("no feasible partition candidate (empty encoding set?)");
    }
    return best;
}

std::string SweepResult::csv_header() {
    return "bandwidth_bps,power_W,objective,best_layer,fps,J_per_frame";
}

std::string SweepResult::csv() const {
    std::string out = csv_header() + '\n';
    for (const SweepCell& cell : cells) {
        for (const Objective obj : {Objective::throughput, Objective::energy}) {
            const OptimizeResult& r =
                obj == Objective::throughput ? cell.best_throughput : cell.best_energy;
            out += fmt(cell.bandwidth_bps);
            out += ',' + fmt(cell.power_W);
            out += ',';
            out += to_string(obj);
            out += ',' + r.report.layer_name;
            out += ',' + fmt(r.report.throughput_fps);
            out += ',' + fmt(r.report.energy_per_frame_J);
            out += '\n';
        }
    }
    return out;
}

SweepResult sweep(const NetworkSpec& net, const HardwareSpec& hw, const AccuracyCurves& curves,
                  double max_loss_pct, const std::vector<double>& bandwidth_bps,
                  const std::vector<double>& power_W, CurveVariant variant) {
    if (bandwidth_bps.empty() || power_W.empty()) {
        throw ParseError("sweep needs at least one bandwidth and one power value");
    }
    SweepResult result;
    result.cells.reserve(bandwidth_bps.size() * power_W.size());
    for (double bw : bandwidth_bps) {
        for (double pw : power_W) {
            ChannelSpec ch;
            ch.name = "sweep";
            ch.modes = {ChannelMode{bw, pw}};
            ch.selected_mode = 0;
            ch.validate();

            SweepCell cell;
            cell.bandwidth_bps = bw;
            cell.power_W = pw;
            cell.best_throughput = optimize_partition(net, hw, ch, curves, max_loss_pct,
                                                      Objective::throughput, EncodingSet::all(),
                                                      variant);
            cell.best_energy = optimize_partition(net, hw, ch, curves, max_loss_pct,
                                                  Objective::energy, EncodingSet::all(), variant);
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

}  // namespace splitedge
