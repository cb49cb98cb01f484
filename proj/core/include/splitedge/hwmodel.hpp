// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "splitedge/errors.hpp"
#include "splitedge/netmodel.hpp"

namespace splitedge {

/// Edge-platform parameters. Config files annotate each field with a
/// "source" ("datasheet" or "calibrated"); the loader keeps the values only.
struct HardwareSpec {
    std::string name;
    std::uint32_t mac_units{144};
    std::uint32_t mac_bits{16};
    double clock_hz{};
    double energy_per_mac{};         // J per multiply-accumulate
    double dram_energy_per_32b{};    // J per 32-bit DRAM access
    double dram_bandwidth_Bps{};
    double codec_bytes_per_cycle{};  // on-chip JPEG encode/decode throughput
    double codec_power_W{};
    double weight_compression_ratio{5.0};
    double buffer_energy_per_byte{};  // J, on-chip feature buffer

    static HardwareSpec load(const std::filesystem::path& path);
    void validate() const;

    [[nodiscard]] double codec_Bps() const { return codec_bytes_per_cycle * clock_hz; }
};

struct ChannelMode {
    double datarate_bps{};
    double power_W{};
};

struct ChannelSpec {
    std::string name;
    std::vector<ChannelMode> modes;
    std::size_t selected_mode{};

    static ChannelSpec load(const std::filesystem::path& path);
    void validate() const;

    [[nodiscard]] const ChannelMode& mode() const { return modes.at(selected_mode); }
};

struct StageCost {
    double latency_s{};
    double energy_J{};
};

/// Inference cost of a layer range. Compute and weight streaming overlap, so
/// the slower of the two sets the latency:
///   latency = max(macs / (mac_units * clock), compressed_weights / dram_bw)
/// Energy charges MACs, compressed-weight DRAM traffic, weight decode on the
/// on-chip codec, and feature buffer traffic (in + out bytes per layer).
StageCost inference_cost(const HardwareSpec& hw, std::span<const LayerDemand> demands);

/// Feature-encode cost; throughput is raw-size bound, `encoded_bytes` is the
/// resulting payload (kept for symmetry, it does not enter this model).
StageCost encode_cost(const HardwareSpec& hw, double raw_bytes, double encoded_bytes);

/// Transmission cost at the channel's selected mode.
StageCost tx_cost(const ChannelSpec& ch, double payload_bytes);

}  // namespace splitedge
