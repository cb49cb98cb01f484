// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "splitedge/errors.hpp"
#include "splitedge/netmodel.hpp"

namespace splitedge {

/// A channels x height x width block of 16-bit feature values, row-major.
struct FeatureTensor {
    Shape3 shape{};
    std::vector<std::int16_t> data;
    std::optional<double> scale_hint;  // original dynamic range, metadata only

    static FeatureTensor zeros(Shape3 shape);

    [[nodiscard]] std::uint64_t raw_bytes() const { return shape.elems() * 2; }

    // scale_hint is not carried by encoded streams, so equality ignores it.
    friend bool operator==(const FeatureTensor& a, const FeatureTensor& b) {
        return a.shape == b.shape && a.data == b.data;
    }
};

enum class CodecMode : std::uint8_t { lossless = 0, lossy = 1 };

struct StreamHeader {
    std::uint8_t version{1};
    CodecMode mode{CodecMode::lossless};
    Shape3 shape{};
    std::uint8_t qf{};           // 0 when lossless
    float dequant_scale{};       // 0 when lossless
    float dequant_offset{};
};

/// Serialized feature stream. Layout (all multi-byte fields little-endian):
///
///   magic "FSE1" | version u8 | mode u8 | shape 3x u32 | qf u8
///   | dequant_scale f32 | dequant_offset f32
///   | table: count u16, then per symbol { id u16, code length u8 }
///   | payload: canonical-Huffman coded bits, MSB-first, zero-padded
struct EncodedStream {
    StreamHeader header;
    std::vector<std::uint8_t> bytes;  // the full serialized stream
    std::size_t payload_offset{};     // byte offset where the payload starts

    [[nodiscard]] std::size_t total_bytes() const { return bytes.size(); }
    [[nodiscard]] std::size_t payload_bytes() const { return bytes.size() - payload_offset; }

    /// Parses and validates the header of a serialized stream.
    static EncodedStream from_bytes(std::vector<std::uint8_t> raw);

    void save(const std::filesystem::path& path) const;
    static EncodedStream load(const std::filesystem::path& path);
};

struct FeatureStats {
    double entropy_bits{};   // Shannon entropy of the 8-bit-quantized histogram
    double nonzero_ratio{};  // fraction of elements != 0
};

/// Entropy and sparsity of a tensor; the entropy histogram uses the same
/// per-tensor affine 8-bit quantization as the lossy encoder.
FeatureStats feature_stats(const FeatureTensor& t);

/// Zero-run-length + canonical Huffman coding of the raw 16-bit values.
/// Exact reconstruction; the stream is deterministic for identical input.
EncodedStream encode_lossless(const FeatureTensor& t);
FeatureTensor decode_lossless(const EncodedStream& s);

/// JPEG-style transform coding: per-tensor affine 8-bit quantization,
/// per-channel 8x8 block DCT, quality-scaled quantization, zigzag,
/// run-length + Huffman (the same entropy coder as the lossless path).
EncodedStream encode_lossy(const FeatureTensor& t, int qf);
FeatureTensor decode_lossy(const EncodedStream& s);

/// Dispatches on the stream's mode.
FeatureTensor decode(const EncodedStream& s);

/// Raw tensor bytes divided by total stream bytes (header included).
double compression_ratio(const FeatureTensor& t, const EncodedStream& s);

}  // namespace splitedge
