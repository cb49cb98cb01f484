// SPDX-License-Identifier: Apache-2.0
#include "splitedge/netmodel.hpp"

#include <fstream>
#include <limits>

#include "json_util.hpp"

namespace splitedge {

namespace {

std::uint32_t strided_extent(std::uint32_t in, std::uint32_t window, std::uint32_t pad,
                             std::uint32_t stride) {
    // floor((in + 2*pad - window) / stride) + 1; caller checks window <= in + 2*pad
    return (in + 2 * pad - window) / stride + 1;
}

}  // namespace

const char* to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::conv: return "conv";
        case LayerKind::fc: return "fc";
        case LayerKind::maxpool: return "maxpool";
        case LayerKind::relu: return "relu";
        case LayerKind::norm: return "norm";
        case LayerKind::flatten: return "flatten";
    }
    return "?";
}

LayerKind layer_kind_from_string(std::string_view s) {
    if (s == "conv") return LayerKind::conv;
    if (s == "fc") return LayerKind::fc;
    if (s == "maxpool") return LayerKind::maxpool;
    if (s == "relu") return LayerKind::relu;
    if (s == "norm") return LayerKind::norm;
    if (s == "flatten") return LayerKind::flatten;
    throw ParseError("unknown layer kind '" + std::string(s) + "'");
}

NetworkSpec::NetworkSpec(std::string name, Shape3 input_shape, std::vector<LayerSpec> layers,
                         unsigned feature_bits)
    : name_(std::move(name)),
      input_shape_(input_shape),
      feature_bits_(feature_bits),
      layers_(std::move(layers)) {
    if (layers_.empty()) {
        throw ShapeError("network '" + name_ + "': needs at least one layer");
    }
    if (input_shape_.c == 0 || input_shape_.h == 0 || input_shape_.w == 0) {
        throw ShapeError("network '" + name_ + "': input shape has a zero dimension");
    }
    if (feature_bits_ == 0 || feature_bits_ % 8 != 0) {
        throw ParseError("network '" + name_ + "': feature_bits must be a multiple of 8");
    }
    propagate();
}

void NetworkSpec::propagate() {
    shapes_.clear();
    shapes_.reserve(layers_.size());
    Shape3 cur = input_shape_;
    for (const LayerSpec& l : layers_) {
        const std::string where = "layer '" + l.name + "'";
        switch (l.kind) {
            case LayerKind::conv: {
                if (l.stride < 1) throw ShapeError(where + ": stride must be >= 1");
                if (l.kernel_h < 1 || l.kernel_w < 1)
                    throw ShapeError(where + ": kernel dims must be >= 1");
                if (l.out_channels < 1) throw ShapeError(where + ": out_channels must be >= 1");
                if (cur.h + 2 * l.pad < l.kernel_h || cur.w + 2 * l.pad < l.kernel_w)
                    throw ShapeError(where + ": kernel exceeds padded input");
                cur = Shape3{l.out_channels, strided_extent(cur.h, l.kernel_h, l.pad, l.stride),
                             strided_extent(cur.w, l.kernel_w, l.pad, l.stride)};
                break;
            }
            case LayerKind::maxpool: {
                if (l.stride < 1) throw ShapeError(where + ": stride must be >= 1");
                if (l.window < 1) throw ShapeError(where + ": window must be >= 1");
                if (cur.h < l.window || cur.w < l.window)
                    throw ShapeError(where + ": window exceeds input");
                cur = Shape3{cur.c, strided_extent(cur.h, l.window, 0, l.stride),
                             strided_extent(cur.w, l.window, 0, l.stride)};
                break;
            }
            case LayerKind::fc: {
                if (l.out_features < 1) throw ShapeError(where + ": out_features must be >= 1");
                cur = Shape3{l.out_features, 1, 1};
                break;
            }
            case LayerKind::flatten: {
                const std::uint64_t n = cur.elems();
                if (n > std::numeric_limits<std::uint32_t>::max())
                    throw ShapeError(where + ": flattened size overflows");
                cur = Shape3{static_cast<std::uint32_t>(n), 1, 1};
                break;
            }
            case LayerKind::relu:
            case LayerKind::norm:
                break;
        }
        if (cur.c == 0 || cur.h == 0 || cur.w == 0) {
            throw ShapeError(where + ": output shape collapsed to zero");
        }
        shapes_.push_back(cur);
    }
}

const Shape3& NetworkSpec::output_shape(std::size_t index) const {
    if (index >= shapes_.size()) {
        throw ShapeError("network '" + name_ + "': layer index out of range");
    }
    return shapes_[index];
}

std::size_t NetworkSpec::index_of(std::string_view layer_name) const {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        if (layers_[i].name == layer_name) return i;
    }
    throw ParseError("network '" + name_ + "': no layer named '" + std::string(layer_name) + "'");
}

std::uint64_t NetworkSpec::feature_bytes(std::uint64_t elems) const {
    return elems * feature_bits_ / 8;
}

std::uint64_t NetworkSpec::input_bytes() const {
    return feature_bytes(input_shape_.elems());
}

LayerDemand NetworkSpec::layer_demand(std::size_t index) const {
    if (index >= layers_.size()) {
        throw ShapeError("network '" + name_ + "': layer index out of range");
    }
    const LayerSpec& l = layers_[index];
    const Shape3& in = index == 0 ? input_shape_ : shapes_[index - 1];
    const Shape3& out = shapes_[index];

    LayerDemand d;
    d.out_shape = out;
    d.in_feature_bytes = feature_bytes(in.elems());
    d.out_feature_bytes = feature_bytes(out.elems());
    switch (l.kind) {
        case LayerKind::conv: {
            const std::uint64_t kernel = static_cast<std::uint64_t>(l.kernel_h) * l.kernel_w * in.c;
            d.macs = kernel * out.c * out.h * out.w;
            d.weight_bytes = feature_bytes(kernel * out.c + out.c);  // weights + biases
            break;
        }
        case LayerKind::fc: {
            const std::uint64_t n_in = in.elems();
            const std::uint64_t n_out = l.out_features;
            d.macs = n_in * n_out;
            d.weight_bytes = feature_bytes(n_in * n_out + n_out);
            break;
        }
        case LayerKind::maxpool:
        case LayerKind::relu:
        case LayerKind::norm:
        case LayerKind::flatten:
            // comparisons / normalization / reshapes treated as free
            break;
    }
    return d;
}

CumulativeDemand NetworkSpec::cumulative_demand(std::size_t upto) const {
    if (upto >= layers_.size()) {
        throw ShapeError("network '" + name_ + "': layer index out of range");
    }
    CumulativeDemand sum;
    for (std::size_t i = 0; i <= upto; ++i) {
        const LayerDemand d = layer_demand(i);
        sum.macs += d.macs;
        sum.weight_bytes += d.weight_bytes;
    }
    return sum;
}

NetworkSpec NetworkSpec::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    return parse(in, path.string());
}

NetworkSpec NetworkSpec::parse(std::istream& in, const std::string& origin) {
    using detail::json;
    const json j = detail::parse_json(in, origin);

    const std::string name = detail::require(j, "name", origin).get<std::string>();
    const json& ish = detail::require(j, "input_shape", origin);
    if (!ish.is_array() || ish.size() != 3) {
        throw ParseError(origin + ": input_shape must be [c, h, w]");
    }
    Shape3 input{ish[0].get<std::uint32_t>(), ish[1].get<std::uint32_t>(),
                 ish[2].get<std::uint32_t>()};
    const unsigned feature_bits = j.value("feature_bits", 16u);

    const json& jl = detail::require(j, "layers", origin);
    if (!jl.is_array() || jl.empty()) {
        throw ParseError(origin + ": layers must be a non-empty array");
    }

    std::vector<LayerSpec> layers;
    layers.reserve(jl.size());
    for (const json& e : jl) {
        LayerSpec l;
        l.name = detail::require(e, "name", origin).get<std::string>();
        const std::string where = origin + ": layer '" + l.name + "'";
        try {
            l.kind = layer_kind_from_string(
                detail::require(e, "kind", where).get<std::string>());
            switch (l.kind) {
                case LayerKind::conv:
                    l.kernel_h = detail::require(e, "kernel_h", where).get<std::uint32_t>();
                    l.kernel_w = detail::require(e, "kernel_w", where).get<std::uint32_t>();
                    l.stride = detail::require(e, "stride", where).get<std::uint32_t>();
                    l.pad = detail::require(e, "pad", where).get<std::uint32_t>();
                    l.out_channels = detail::require(e, "out_channels", where).get<std::uint32_t>();
                    break;
                case LayerKind::fc:
                    l.out_features = detail::require(e, "out_features", where).get<std::uint32_t>();
                    break;
                case LayerKind::maxpool:
                    l.window = detail::require(e, "window", where).get<std::uint32_t>();
                    l.stride = detail::require(e, "stride", where).get<std::uint32_t>();
                    break;
                case LayerKind::relu:
                case LayerKind::norm:
                case LayerKind::flatten:
                    break;
            }
        } catch (const json::exception& ex) {
            throw ParseError(where + ": " + ex.what());
        }
        layers.push_back(std::move(l));
    }

    return NetworkSpec(name, input, std::move(layers), feature_bits);
}

}  // namespace splitedge
