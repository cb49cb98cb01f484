// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "splitedge/errors.hpp"

namespace splitedge {

/// MSB-first bit packer. Bytes are appended to an external buffer; the final
/// partial byte is zero-padded by flush().
class BitWriter {
public:
    explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void put_bits(std::uint32_t bits, unsigned count) {
        acc_ = (acc_ << count) | (static_cast<std::uint64_t>(bits) & ((1ull << count) - 1));
        filled_ += count;
        while (filled_ >= 8) {
            filled_ -= 8;
            out_.push_back(static_cast<std::uint8_t>((acc_ >> filled_) & 0xFF));
        }
    }

    void flush() {
        if (filled_ > 0) {
            out_.push_back(static_cast<std::uint8_t>((acc_ << (8 - filled_)) & 0xFF));
            filled_ = 0;
        }
        acc_ = 0;
    }

private:
    std::vector<std::uint8_t>& out_;
    std::uint64_t acc_{};
    unsigned filled_{};
};

/// MSB-first bit reader over a fixed byte span. Reading past the end throws
/// CodecError (truncated payload).
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint32_t get_bits(unsigned count) {
        std::uint32_t value = 0;
        for (unsigned i = 0; i < count; ++i) {
            value = (value << 1) | get_bit();
        }
        return value;
    }

    std::uint32_t get_bit() {
        if (pos_ >= data_.size() * 8) {
            throw CodecError("truncated payload: bit stream exhausted");
        }
        const std::size_t byte = pos_ / 8;
        const unsigned shift = 7 - (pos_ % 8);
        ++pos_;
        return (data_[byte] >> shift) & 1u;
    }

    [[nodiscard]] std::size_t bits_consumed() const { return pos_; }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_{};
};

// Little-endian scalar helpers for the fixed-size header fields.

inline void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

inline void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

inline void put_f32le(std::vector<std::uint8_t>& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32le(out, bits);
}

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() { return take(1)[0]; }

    std::uint16_t u16le() {
        auto b = take(2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }

    std::uint32_t u32le() {
        auto b = take(4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }

    float f32le() {
        std::uint32_t bits = u32le();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }

    [[nodiscard]] std::size_t offset() const { return pos_; }
    [[nodiscard]] std::size_t remaining() const { return data_.size() - pos_; }

    std::span<const std::uint8_t> rest() const { return data_.subspan(pos_); }

private:
    std::span<const std::uint8_t> take(std::size_t n) {
        if (pos_ + n > data_.size()) {
            throw CodecError("truncated stream: header ends prematurely");
        }
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_{};
};

}  // namespace splitedge
