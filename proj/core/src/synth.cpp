// SPDX-License-Identifier: Apache-2.0
#include "splitedge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace splitedge {

namespace {

// splitmix64: tiny, seedable, identical output everywhere.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double u01() {  // uniform in (0, 1]
        return (static_cast<double>(next() >> 11) + 1.0) / 9007199254740993.0;
    }
};

}  // namespace

void SynthSpec::validate() const {
    if (shape.elems() == 0) throw ParseError("synth: shape has a zero dimension");
    if (nonzero_ratio < 0.0 || nonzero_ratio > 1.0) {
        throw ParseError("synth: nonzero_ratio must lie in [0, 1]");
    }
    if (dist == Dist::exponential && exp_rate <= 0.0) {
        throw ParseError("synth: exponential rate must be positive");
    }
    if (dist == Dist::uniform && (uniform_lo < 0.0 || uniform_hi < uniform_lo)) {
        throw ParseError("synth: uniform bounds need 0 <= lo <= hi");
    }
    if (spatial_clustering < 0.0) throw ParseError("synth: spatial_clustering must be >= 0");
}

FeatureTensor generate(const SynthSpec& spec) {
    spec.validate();
    const std::uint64_t n = spec.shape.elems();
    const std::uint64_t k =
        std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::llround(spec.nonzero_ratio * static_cast<double>(n))));

    FeatureTensor t = FeatureTensor::zeros(spec.shape);
    if (k == 0) return t;

    const std::uint32_t H = spec.shape.h;
    const std::uint32_t W = spec.shape.w;

    // Support weights: flat field, optionally raised around per-channel blob
    // centers so the active positions clump the way sparse activation maps do.
    std::vector<double> weight(n, 1.0);
    SplitMix64 blob_rng(spec.seed ^ 0xB10BB10BB10BB10Bull);
    if (spec.spatial_clustering > 0.0 && H * W > 1) {
        const int blobs = std::max(1, static_cast<int>(std::lround(2.0 * spec.spatial_clustering)));
        const double sigma =
            std::max(1.0, std::sqrt(static_cast<double>(H) * W) / (3.0 * (1.0 + spec.spatial_clustering)));
        const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
        for (std::uint32_t c = 0; c < spec.shape.c; ++c) {
            for (int b = 0; b < blobs; ++b) {
                const double cy = blob_rng.u01() * H;
                const double cx = blob_rng.u01() * W;
                for (std::uint32_t y = 0; y < H; ++y) {
                    for (std::uint32_t x = 0; x < W; ++x) {
                        const double dy = y + 0.5 - cy;
                        const double dx = x + 0.5 - cx;
                        weight[(static_cast<std::uint64_t>(c) * H + y) * W + x] +=
                            16.0 * spec.spatial_clustering * std::exp(-(dy * dy + dx * dx) * inv2s2);
                    }
                }
            }
        }
    }

    // Weighted sampling without replacement (exactly k positions): order by
    // log(u)/w and keep the top k. Ties break on index for determinism.
    SplitMix64 key_rng(spec.seed);
    std::vector<std::pair<double, std::uint64_t>> keys(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        keys[i] = {std::log(key_rng.u01()) / weight[i], i};
    }
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(k - 1), keys.end(),
                     [](const auto& a, const auto& b) {
                         if (a.first != b.first) return a.first > b.first;
                         return a.second < b.second;
                     });
    std::vector<std::uint64_t> chosen;
    chosen.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) chosen.push_back(keys[i].second);
    std::sort(chosen.begin(), chosen.end());

    // Values are drawn in index order from a second stream, so the selection
    // and the amplitudes are independently reproducible.
    SplitMix64 value_rng(spec.seed ^ 0x5EEDF00D5EEDF00Dull);
    for (std::uint64_t idx : chosen) {
        double v = 0.0;
        switch (spec.dist) {
            case SynthSpec::Dist::exponential:
                v = -std::log(value_rng.u01()) / spec.exp_rate;
                break;
            case SynthSpec::Dist::uniform:
                v = spec.uniform_lo + value_rng.u01() * (spec.uniform_hi - spec.uniform_lo);
                break;
        }
        long r = std::lround(std::max(0.0, v));  // post-ReLU: clamp at zero
        r = std::min(r, 32767l);
        if (r == 0) r = 1;  // keep the realized nonzero count exact
        t.data[idx] = static_cast<std::int16_t>(r);
    }
    return t;
}

}  // namespace splitedge
