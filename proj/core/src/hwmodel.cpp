// SPDX-License-Identifier: Apache-2.0
#include "splitedge/hwmodel.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace splitedge {

HardwareSpec HardwareSpec::load(const std::filesystem::path& path) {
    const auto j = detail::load_json(path);
    const std::string ctx = path.string();
    HardwareSpec hw;
    hw.name = j.value("name", path.stem().string());
    hw.mac_units = static_cast<std::uint32_t>(detail::annotated_number(j, "mac_units", ctx));
    hw.mac_bits = static_cast<std::uint32_t>(detail::annotated_number_or(j, "mac_bits", ctx, 16));
    hw.clock_hz = detail::annotated_number(j, "clock_hz", ctx);
    hw.energy_per_mac = detail::annotated_number(j, "energy_per_mac", ctx);
    hw.dram_energy_per_32b = detail::annotated_number(j, "dram_energy_per_32b", ctx);
    hw.dram_bandwidth_Bps = detail::annotated_number(j, "dram_bandwidth_Bps", ctx);
    hw.codec_bytes_per_cycle = detail::annotated_number(j, "codec_bytes_per_cycle", ctx);
    hw.codec_power_W = detail::annotated_number(j, "codec_power_W", ctx);
    hw.weight_compression_ratio =
        detail::annotated_number_or(j, "weight_compression_ratio", ctx, 5.0);
    hw.buffer_energy_per_byte = detail::annotated_number(j, "buffer_energy_per_byte", ctx);
    hw.validate();
    return hw;
}

void HardwareSpec::validate() const {
    const std::string ctx = "hardware '" + name + "'";
    if (mac_units < 1) throw ParseError(ctx + ": mac_units must be >= 1");
    if (clock_hz <= 0) throw ParseError(ctx + ": clock_hz must be positive");
    if (energy_per_mac <= 0) throw ParseError(ctx + ": energy_per_mac must be positive");
    if (dram_energy_per_32b <= 0) throw ParseError(ctx + ": dram_energy_per_32b must be positive");
    if (dram_bandwidth_Bps <= 0) throw ParseError(ctx + ": dram_bandwidth_Bps must be positive");
    if (codec_bytes_per_cycle <= 0) throw ParseError(ctx + ": codec_bytes_per_cycle must be positive");
    if (codec_power_W <= 0) throw ParseError(ctx + ": codec_power_W must be positive");
    if (weight_compression_ratio < 1.0) {
        throw ParseError(ctx + ": weight_compression_ratio must be >= 1");
    }
    if (buffer_energy_per_byte <= 0) throw ParseError(ctx + ": buffer_energy_per_byte must be positive");
}

ChannelSpec ChannelSpec::load(const std::filesystem::path& path) {
    const auto j = detail::load_json(path);
    const std::string ctx = path.string();
    ChannelSpec ch;
    ch.name = j.value("name", path.stem().string());
    const auto& modes = detail::require(j, "modes", ctx);
    if (!modes.is_array() || modes.empty()) {
        throw ParseError(ctx + ": modes must be a non-empty array");
    }
    for (const auto& m : modes) {
        ChannelMode mode;
        mode.datarate_bps = detail::annotated_number(m, "datarate_bps", ctx);
        mode.power_W = detail::annotated_number(m, "power_W", ctx);
        ch.modes.push_back(mode);
    }
    ch.selected_mode = j.value("selected_mode", 0u);
    ch.validate();
    return ch;
}

void ChannelSpec::validate() const {
    const std::string ctx = "channel '" + name + "'";
    if (modes.empty()) throw ParseError(ctx + ": needs at least one mode");
    if (selected_mode >= modes.size()) throw ParseError(ctx + ": selected_mode out of range");
    for (const ChannelMode& m : modes) {
        if (m.datarate_bps <= 0) throw ParseError(ctx + ": datarate must be positive");
        if (m.power_W <= 0) throw ParseError(ctx + ": power must be positive");
    }
}

StageCost inference_cost(const HardwareSpec& hw, std::span<const LayerDemand> demands) {
    double macs = 0.0;
    double weight_bytes = 0.0;
    double buffer_bytes = 0.0;
    for (const LayerDemand& d : demands) {
        macs += static_cast<double>(d.macs);
        weight_bytes += static_cast<double>(d.weight_bytes);
        buffer_bytes += static_cast<double>(d.in_feature_bytes + d.out_feature_bytes);
    }
    const double compressed = weight_bytes / hw.weight_compression_ratio;

    StageCost cost;
    const double compute_s = macs / (static_cast<double>(hw.mac_units) * hw.clock_hz);
    const double stream_s = compressed / hw.dram_bandwidth_Bps;
    cost.latency_s = std::max(compute_s, stream_s);
    cost.energy_J = macs * hw.energy_per_mac
                    + compressed * (hw.dram_energy_per_32b / 4.0)
                    + (compressed / hw.codec_Bps()) * hw.codec_power_W  // weight decode
                    + buffer_bytes * hw.buffer_energy_per_byte;
    return cost;
}

StageCost encode_cost(const HardwareSpec& hw, double raw_bytes, double /*encoded_bytes*/) {
    StageCost cost;
    cost.latency_s = raw_bytes / hw.codec_Bps();
    cost.energy_J = cost.latency_s * hw.codec_power_W;
    return cost;
}

StageCost tx_cost(const ChannelSpec& ch, double payload_bytes) {
    const ChannelMode& m = ch.mode();
    StageCost cost;
    cost.latency_s = 8.0 * payload_bytes / m.datarate_bps;
    cost.energy_J = cost.latency_s * m.power_W;
    return cost;
}

}  // namespace splitedge
