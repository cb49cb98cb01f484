// SPDX-License-Identifier: Apache-2.0
#include "splitedge/curves.hpp"

#include <limits>

#include "json_util.hpp"

namespace splitedge {

const char* to_string(CurveVariant v) {
    return v == CurveVariant::original ? "original" : "finetuned";
}

CurveVariant curve_variant_from_string(std::string_view s) {
    if (s == "original") return CurveVariant::original;
    if (s == "finetuned") return CurveVariant::finetuned;
    throw ParseError("unknown curve variant '" + std::string(s) + "'");
}

double CurveEntry::ratio_at(int qf) const {
    for (const CurveSample& s : samples) {
        if (s.qf == qf) return s.compression_ratio;
    }
    throw CurveError("layer '" + layer + "': qf " + std::to_string(qf) + " is not sampled");
}

AccuracyCurves AccuracyCurves::load(const std::filesystem::path& path) {
    const auto j = detail::load_json(path);
    const std::string ctx = path.string();
    std::vector<CurveEntry> entries;
    const auto& je = detail::require(j, "entries", ctx);
    if (!je.is_array()) throw ParseError(ctx + ": entries must be an array");
    for (const auto& e : je) {
        CurveEntry entry;
        entry.layer = detail::require(e, "layer", ctx).get<std::string>();
        entry.variant =
            curve_variant_from_string(e.value("variant", std::string("original")));
        entry.lossless_ratio = e.value("lossless_ratio", 0.0);
        const auto& js = detail::require(e, "samples", ctx + ": layer '" + entry.layer + "'");
        for (const auto& s : js) {
            if (!s.is_array() || s.size() != 3) {
                throw ParseError(ctx + ": layer '" + entry.layer +
                                 "': samples must be [qf, ratio, loss_pct] triples");
            }
            entry.samples.push_back(
                CurveSample{s[0].get<int>(), s[1].get<double>(), s[2].get<double>()});
        }
        entries.push_back(std::move(entry));
    }
    return from_entries(j.value("network", std::string()), std::move(entries));
}

AccuracyCurves AccuracyCurves::from_entries(std::string network, std::vector<CurveEntry> entries) {
    AccuracyCurves c;
    c.network_ = std::move(network);
    c.entries_ = std::move(entries);
    c.validate();
    return c;
}

void AccuracyCurves::validate() const {
    for (const CurveEntry& e : entries_) {
        const std::string ctx = "curve for layer '" + e.layer + "' (" + to_string(e.variant) + ")";
        if (e.samples.empty()) throw CurveError(ctx + ": no samples");
        for (std::size_t i = 0; i < e.samples.size(); ++i) {
            const CurveSample& s = e.samples[i];
            if (s.qf < 1 || s.qf > 100) throw CurveError(ctx + ": qf outside 1..100");
            if (s.compression_ratio <= 0) throw CurveError(ctx + ": ratio must be positive");
            if (s.accuracy_loss_pct < 0) throw CurveError(ctx + ": negative accuracy loss");
            if (i > 0) {
                if (s.qf <= e.samples[i - 1].qf) {
                    throw CurveError(ctx + ": qf samples must be strictly increasing");
                }
                if (s.accuracy_loss_pct > e.samples[i - 1].accuracy_loss_pct) {
                    throw CurveError(ctx + ": accuracy loss must be nonincreasing in qf");
                }
            }
        }
        if (e.lossless_ratio < 0) throw CurveError(ctx + ": negative lossless ratio");
        for (const CurveEntry& other : entries_) {
            if (&other != &e && other.layer == e.layer && other.variant == e.variant) {
                throw CurveError(ctx + ": duplicate entry");
            }
        }
    }
}

bool AccuracyCurves::has_entry(std::string_view layer, CurveVariant variant) const {
    for (const CurveEntry& e : entries_) {
        if (e.layer == layer && e.variant == variant) return true;
    }
    return false;
}

const CurveEntry& AccuracyCurves::entry(std::string_view layer, CurveVariant variant) const {
    for (const CurveEntry& e : entries_) {
        if (e.layer == layer && e.variant == variant) return e;
    }
    throw CurveError("no curve entry for layer '" + std::string(layer) + "' (" +
                     to_string(variant) + ")");
}

QfChoice select_qf(const AccuracyCurves& curves, std::string_view layer, CurveVariant variant,
                   double max_loss_pct) {
    if (max_loss_pct < 0) throw CurveError("max_loss_pct must be >= 0");
    const CurveEntry& e = curves.entry(layer, variant);
    for (const CurveSample& s : e.samples) {  // qf ascending: first hit is smallest
        if (s.accuracy_loss_pct <= max_loss_pct) {
            return QfChoice{s.qf, s.compression_ratio};
        }
    }
    throw CurveError("layer '" + std::string(layer) + "': no sampled qf meets loss bound " +
                     std::to_string(max_loss_pct) + "%");
}

}  // namespace splitedge
