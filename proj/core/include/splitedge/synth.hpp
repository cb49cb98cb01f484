// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "splitedge/featcodec.hpp"

namespace splitedge {

/// Recipe for a synthetic post-ReLU feature tensor with controlled sparsity.
/// spatial_clustering > 0 concentrates the nonzero mass into contiguous
/// blobs, mimicking sparse activation maps.
struct SynthSpec {
    enum class Dist { exponential, uniform };

    Shape3 shape{};
    double nonzero_ratio{};
    Dist dist{Dist::exponential};
    double exp_rate{0.05};   // exponential: value ~ Exp(rate)
    double uniform_lo{1.0};  // uniform: value ~ U[lo, hi]
    double uniform_hi{100.0};
    double spatial_clustering{};
    std::uint64_t seed{};

    void validate() const;
};

/// Deterministic generator: identical specs produce byte-identical tensors.
/// Exactly round(nonzero_ratio * n) elements are nonzero; values are
/// nonnegative and drawn from the configured distribution.
FeatureTensor generate(const SynthSpec& spec);

}  // namespace splitedge
