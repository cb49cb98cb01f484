// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "splitedge/errors.hpp"

namespace splitedge {

struct Shape3 {
    std::uint32_t c{};
    std::uint32_t h{};
    std::uint32_t w{};

    [[nodiscard]] std::uint64_t elems() const {
        return static_cast<std::uint64_t>(c) * h * w;
    }
    bool operator==(const Shape3&) const = default;
};

enum class LayerKind { conv, fc, maxpool, relu, norm, flatten };

const char* to_string(LayerKind kind);
LayerKind layer_kind_from_string(std::string_view s);

/// One layer of a declarative network description. Only the fields relevant
/// to `kind` are meaningful; the rest stay zero.
struct LayerSpec {
    std::string name;
    LayerKind kind{LayerKind::relu};

    // conv
    std::uint32_t kernel_h{};
    std::uint32_t kernel_w{};
    std::uint32_t stride{1};  // shared with maxpool
    std::uint32_t pad{};
    std::uint32_t out_channels{};

    // fc
    std::uint32_t out_features{};

    // maxpool
    std::uint32_t window{};
};

/// Compute / memory / feature demand of a single layer.
struct LayerDemand {
    std::uint64_t macs{};
    std::uint64_t weight_bytes{};      // uncompressed, biases included
    std::uint64_t in_feature_bytes{};  // bytes consumed from the previous layer
    std::uint64_t out_feature_bytes{};
    Shape3 out_shape{};
};

struct CumulativeDemand {
    std::uint64_t macs{};
    std::uint64_t weight_bytes{};
};

/// A validated network architecture with all layer shapes propagated.
///
/// Shape rules:
///   conv:    Hout = (Hin + 2*pad - kernel_h)/stride + 1 (floor), same for W
///   maxpool: Hout = (Hin - window)/stride + 1 (floor), channels unchanged
///   fc:      consumes all c*h*w inputs, emits (out_features, 1, 1)
///   flatten: (c*h*w, 1, 1)
///   relu / norm: shape preserved, no compute or weights charged
class NetworkSpec {
public:
    NetworkSpec(std::string name, Shape3 input_shape, std::vector<LayerSpec> layers,
                unsigned feature_bits = 16);

    static NetworkSpec load(const std::filesystem::path& path);
    static NetworkSpec parse(std::istream& in, const std::string& origin);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Shape3& input_shape() const { return input_shape_; }
    [[nodiscard]] unsigned feature_bits() const { return feature_bits_; }
    [[nodiscard]] const std::vector<LayerSpec>& layers() const { return layers_; }
    [[nodiscard]] std::size_t layer_count() const { return layers_.size(); }

    /// Propagated output shape of layer `index`.
    [[nodiscard]] const Shape3& output_shape(std::size_t index) const;

    /// Index of the layer named `layer_name`; throws ParseError if absent.
    [[nodiscard]] std::size_t index_of(std::string_view layer_name) const;

    [[nodiscard]] LayerDemand layer_demand(std::size_t index) const;

    /// Elementwise sum of layer_demand over layers 0..=upto.
    [[nodiscard]] CumulativeDemand cumulative_demand(std::size_t upto) const;

    [[nodiscard]] std::uint64_t input_bytes() const;

    /// Bytes occupied by `elems` feature values at this network's precision.
    [[nodiscard]] std::uint64_t feature_bytes(std::uint64_t elems) const;

private:
    void propagate();

    std::string name_;
    Shape3 input_shape_{};
    unsigned feature_bits_{16};
    std::vector<LayerSpec> layers_;
    std::vector<Shape3> shapes_;  // shapes_[i] = output of layers_[i]
};

}  // namespace splitedge
