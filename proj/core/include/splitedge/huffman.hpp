// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "splitedge/bitio.hpp"

namespace splitedge::huffman {

inline constexpr int kMaxCodeLength = 16;

/// (symbol id, code length) pair as serialized in a stream's table block.
struct SymbolLength {
    std::uint16_t symbol{};
    std::uint8_t length{};
    bool operator==(const SymbolLength&) const = default;
};

struct Code {
    std::uint16_t bits{};
    std::uint8_t length{};
};

/// Canonical Huffman code table. Codes are implied by the (symbol, length)
/// list: symbols sorted by (length, symbol id) receive consecutive codes.
class CodeTable {
public:
    /// Builds length-limited (<= 16 bit) code lengths from symbol counts.
    /// Deterministic for identical inputs.
    static CodeTable from_frequencies(const std::map<std::uint16_t, std::uint64_t>& freqs);

    /// Reconstructs the table from a serialized (symbol, length) list.
    static CodeTable from_lengths(std::vector<SymbolLength> lengths);

    [[nodiscard]] const std::vector<SymbolLength>& entries() const { return entries_; }

    [[nodiscard]] Code code_for(std::uint16_t symbol) const;

    void write_symbol(BitWriter& bw, std::uint16_t symbol) const {
        const Code c = code_for(symbol);
        bw.put_bits(c.bits, c.length);
    }

private:
    void assign_canonical_codes();

    std::vector<SymbolLength> entries_;           // sorted by symbol id
    std::map<std::uint16_t, Code> codes_;
};

/// Canonical Huffman decoder (first-code table walk, one bit at a time).
class Decoder {
public:
    explicit Decoder(const CodeTable& table);

    std::uint16_t decode(BitReader& br) const;

private:
    // per length: first canonical code value, index of first symbol, count
    struct LengthGroup {
        std::uint32_t first_code{};
        std::uint32_t first_index{};
        std::uint32_t count{};
    };
    LengthGroup groups_[kMaxCodeLength + 1]{};
    std::vector<std::uint16_t> symbols_;  // sorted by (length, symbol id)
};

}  // namespace splitedge::huffman
