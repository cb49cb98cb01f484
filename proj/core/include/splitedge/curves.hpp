// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splitedge/errors.hpp"

namespace splitedge {

enum class CurveVariant { original, finetuned };

const char* to_string(CurveVariant v);
CurveVariant curve_variant_from_string(std::string_view s);

struct CurveSample {
    int qf{};
    double compression_ratio{};
    double accuracy_loss_pct{};
};

/// Measured codec response of one layer's features: lossless ratio plus
/// (qf, ratio, loss) samples for the lossy path. The "input" entry describes
/// JPEG on the raw input image.
struct CurveEntry {
    std::string layer;
    CurveVariant variant{CurveVariant::original};
    double lossless_ratio{};            // 0 when the lossless point is absent
    std::vector<CurveSample> samples;   // qf strictly increasing

    [[nodiscard]] bool has_lossless() const { return lossless_ratio > 0.0; }

    /// Ratio at an exactly sampled qf; throws CurveError otherwise.
    [[nodiscard]] double ratio_at(int qf) const;
};

struct QfChoice {
    int qf{};
    double compression_ratio{};
};

/// Accuracy/compression curves for one network, keyed by (layer, variant).
class AccuracyCurves {
public:
    static AccuracyCurves load(const std::filesystem::path& path);
    static AccuracyCurves from_entries(std::string network, std::vector<CurveEntry> entries);

    [[nodiscard]] const std::string& network() const { return network_; }
    [[nodiscard]] const std::vector<CurveEntry>& entries() const { return entries_; }

    [[nodiscard]] bool has_entry(std::string_view layer, CurveVariant variant) const;

    /// Throws CurveError when the (layer, variant) entry is missing.
    [[nodiscard]] const CurveEntry& entry(std::string_view layer, CurveVariant variant) const;

private:
    void validate() const;

    std::string network_;
    std::vector<CurveEntry> entries_;
};

/// Smallest sampled qf whose accuracy loss meets the bound (smallest qf =
/// highest compression). Throws CurveError when no sample qualifies.
QfChoice select_qf(const AccuracyCurves& curves, std::string_view layer, CurveVariant variant,
                   double max_loss_pct);

}  // namespace splitedge
