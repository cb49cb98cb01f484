// SPDX-License-Identifier: Apache-2.0
#include "splitedge/featcodec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "splitedge/bitio.hpp"
#include "splitedge/dct.hpp"
#include "splitedge/huffman.hpp"

namespace splitedge {

namespace {

constexpr char kMagic[4] = {'F', 'S', 'E', '1'};
constexpr std::uint8_t kVersion = 1;

// Entropy-coder alphabet: sym = (zero run << 5) | magnitude category.
// Category s covers magnitudes [2^(s-1), 2^s - 1]; the value itself follows
// as s raw bits in the usual two's-complement-folded form. Specials:
//   EOB = (0,0)  end of block / end of stream
//   ZRL = (15,0) a run of 16 zeros with no value attached
// The first token of every lossy block is the DC difference, where (0,0)
// positionally means "difference of zero" rather than EOB.
constexpr std::uint16_t kEob = 0;
constexpr std::uint16_t kZrl = 15u << 5;

constexpr std::uint16_t make_symbol(unsigned run, unsigned size) {
    return static_cast<std::uint16_t>((run << 5) | size);
}

unsigned magnitude_category(std::int32_t v) {
    std::uint32_t mag = static_cast<std::uint32_t>(v < 0 ? -static_cast<std::int64_t>(v) : v);
    unsigned s = 0;
    while (mag != 0) {
        ++s;
        mag >>= 1;
    }
    return s;
}

std::uint32_t amplitude_bits(std::int32_t v, unsigned size) {
    return v >= 0 ? static_cast<std::uint32_t>(v)
                  : static_cast<std::uint32_t>(v + (1 << size) - 1);
}

std::int32_t amplitude_value(std::uint32_t bits, unsigned size) {
    if (size == 0) return 0;
    if (bits < (1u << (size - 1))) {
        return static_cast<std::int32_t>(bits) - (1 << size) + 1;
    }
    return static_cast<std::int32_t>(bits);
}

struct Token {
    std::uint16_t symbol{};
    std::uint32_t bits{};
    std::uint8_t nbits{};
};

void push_value_token(std::vector<Token>& tokens, std::map<std::uint16_t, std::uint64_t>& freqs,
                      unsigned run, std::int32_t v) {
    const unsigned s = magnitude_category(v);
    const std::uint16_t sym = make_symbol(run, s);
    tokens.push_back(Token{sym, amplitude_bits(v, s), static_cast<std::uint8_t>(s)});
    ++freqs[sym];
}

void push_plain(std::vector<Token>& tokens, std::map<std::uint16_t, std::uint64_t>& freqs,
                std::uint16_t sym) {
    tokens.push_back(Token{sym, 0, 0});
    ++freqs[sym];
}

EncodedStream assemble_stream(const StreamHeader& header, const std::vector<Token>& tokens,
                              const std::map<std::uint16_t, std::uint64_t>& freqs) {
    const huffman::CodeTable table = huffman::CodeTable::from_frequencies(freqs);

    EncodedStream s;
    s.header = header;
    auto& out = s.bytes;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u8(out, header.version);
    put_u8(out, static_cast<std::uint8_t>(header.mode));
    put_u32le(out, header.shape.c);
    put_u32le(out, header.shape.h);
    put_u32le(out, header.shape.w);
    put_u8(out, header.qf);
    put_f32le(out, header.dequant_scale);
    put_f32le(out, header.dequant_offset);
    put_u16le(out, static_cast<std::uint16_t>(table.entries().size()));
    for (const huffman::SymbolLength& e : table.entries()) {
        put_u16le(out, e.symbol);
        put_u8(out, e.length);
    }
    s.payload_offset = out.size();

    BitWriter bw(out);
    for (const Token& t : tokens) {
        table.write_symbol(bw, t.symbol);
        if (t.nbits > 0) bw.put_bits(t.bits, t.nbits);
    }
    bw.flush();
    return s;
}

struct ParsedStream {
    StreamHeader header;
    huffman::CodeTable table;
    std::span<const std::uint8_t> payload;
};

ParsedStream parse_stream(const std::vector<std::uint8_t>& raw) {
    ByteReader r(raw);
    if (r.remaining() < 4) throw CodecError("truncated stream: no magic");
    for (char m : kMagic) {
        if (r.u8() != static_cast<std::uint8_t>(m)) throw CodecError("bad magic (not an FSE1 stream)");
    }
    ParsedStream p;
    p.header.version = r.u8();
    if (p.header.version != kVersion) throw CodecError("unsupported stream version");
    const std::uint8_t mode = r.u8();
    if (mode > 1) throw CodecError("invalid stream mode");
    p.header.mode = static_cast<CodecMode>(mode);
    p.header.shape.c = r.u32le();
    p.header.shape.h = r.u32le();
    p.header.shape.w = r.u32le();
    if (p.header.shape.elems() == 0) throw CodecError("stream shape has a zero dimension");
    p.header.qf = r.u8();
    if (p.header.mode == CodecMode::lossy && (p.header.qf < 1 || p.header.qf > 100)) {
        throw CodecError("lossy stream with qf outside 1..100");
    }
    p.header.dequant_scale = r.f32le();
    p.header.dequant_offset = r.f32le();
    const std::uint16_t count = r.u16le();
    if (count == 0) throw CodecError("empty huffman table");
    std::vector<huffman::SymbolLength> lengths;
    lengths.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
        huffman::SymbolLength e;
        e.symbol = r.u16le();
        e.length = r.u8();
        lengths.push_back(e);
    }
    p.table = huffman::CodeTable::from_lengths(std::move(lengths));
    p.payload = r.rest();
    return p;
}

// --- per-tensor affine 8-bit bridge ------------------------------------

struct Quantized {
    std::vector<std::uint8_t> q;
    float scale{};
    float offset{};
};

Quantized quantize_u8(const FeatureTensor& t) {
    Quantized out;
    out.q.resize(t.data.size());
    const auto [lo, hi] = std::minmax_element(t.data.begin(), t.data.end());
    const double vmin = *lo;
    const double vmax = *hi;
    out.offset = static_cast<float>(vmin);
    if (vmax == vmin) {
        out.scale = 0.0f;  // constant tensor: every sample maps to bin 0
        return out;
    }
    const double scale = (vmax - vmin) / 255.0;
    out.scale = static_cast<float>(scale);
    for (std::size_t i = 0; i < t.data.size(); ++i) {
        long q = std::lround((t.data[i] - vmin) / scale);
        out.q[i] = static_cast<std::uint8_t>(std::clamp(q, 0l, 255l));
    }
    return out;
}

std::int16_t dequantize_value(std::uint8_t q, float scale, float offset) {
    if (scale == 0.0f) return static_cast<std::int16_t>(std::lround(offset));
    const double v = static_cast<double>(q) * scale + offset;
    const long r = std::lround(v);
    return static_cast<std::int16_t>(std::clamp(r, -32768l, 32767l));
}

void check_tensor(const FeatureTensor& t) {
    if (t.shape.elems() == 0) throw CodecError("tensor shape has a zero dimension");
    if (t.data.size() != t.shape.elems()) {
        throw CodecError("tensor data length does not match its shape");
    }
}

}  // namespace

FeatureTensor FeatureTensor::zeros(Shape3 shape) {
    FeatureTensor t;
    t.shape = shape;
    t.data.assign(shape.elems(), 0);
    return t;
}

FeatureStats feature_stats(const FeatureTensor& t) {
    check_tensor(t);
    std::size_t nonzero = 0;
    for (std::int16_t v : t.data) {
        if (v != 0) ++nonzero;
    }
    const Quantized q = quantize_u8(t);
    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t b : q.q) ++hist[b];
    const double n = static_cast<double>(t.data.size());
    double entropy = 0.0;
    for (std::uint64_t count : hist) {
        if (count == 0) continue;
        const double p = count / n;
        entropy -= p * std::log2(p);
    }
    return FeatureStats{std::clamp(entropy, 0.0, 8.0), nonzero / n};
}

EncodedStream encode_lossless(const FeatureTensor& t) {
    check_tensor(t);
    std::vector<Token> tokens;
    std::map<std::uint16_t, std::uint64_t> freqs;
    unsigned run = 0;
    for (std::int16_t v : t.data) {
        if (v == 0) {
            ++run;
            continue;
        }
        while (run >= 16) {
            push_plain(tokens, freqs, kZrl);
            run -= 16;
        }
        push_value_token(tokens, freqs, run, v);
        run = 0;
    }
    push_plain(tokens, freqs, kEob);  // stream terminator, trailing zeros implied

    StreamHeader h;
    h.mode = CodecMode::lossless;
    h.shape = t.shape;
    return assemble_stream(h, tokens, freqs);
}

FeatureTensor decode_lossless(const EncodedStream& s) {
    const ParsedStream p = parse_stream(s.bytes);
    if (p.header.mode != CodecMode::lossless) {
        throw CodecError("stream mode is not lossless");
    }
    FeatureTensor t = FeatureTensor::zeros(p.header.shape);
    const std::size_t n = t.data.size();
    huffman::Decoder dec(p.table);
    BitReader br(p.payload);
    std::size_t i = 0;
    while (i < n) {
        const std::uint16_t sym = dec.decode(br);
        if (sym == kEob) break;
        if (sym == kZrl) {
            i += 16;
            if (i > n) throw CodecError("zero run overflows tensor");
            continue;
        }
        const unsigned run = sym >> 5;
        const unsigned size = sym & 31;
        if (run > 15 || size == 0 || size > 16) throw CodecError("invalid run/size token");
        i += run;
        if (i >= n) throw CodecError("token overflows tensor");
        const std::int32_t v = amplitude_value(br.get_bits(size), size);
        if (v < -32768 || v > 32767 || v == 0) throw CodecError("decoded value out of range");
        t.data[i] = static_cast<std::int16_t>(v);
        ++i;
    }
    return t;
}

EncodedStream encode_lossy(const FeatureTensor& t, int qf) {
    check_tensor(t);
    if (qf < 1 || qf > 100) {
        throw CodecError("qf must be within 1..100");
    }
    const Quantized q = quantize_u8(t);
    const std::array<int, dct::kBlockSize> qt = dct::scaled_quant_table(qf);
    const std::uint32_t H = t.shape.h;
    const std::uint32_t W = t.shape.w;
    const std::uint32_t blocks_y = (H + 7) / 8;
    const std::uint32_t blocks_x = (W + 7) / 8;

    std::vector<Token> tokens;
    std::map<std::uint16_t, std::uint64_t> freqs;

    for (std::uint32_t c = 0; c < t.shape.c; ++c) {
        const std::uint8_t* plane = q.q.data() + static_cast<std::size_t>(c) * H * W;
        std::int32_t prev_dc = 0;
        for (std::uint32_t by = 0; by < blocks_y; ++by) {
            for (std::uint32_t bx = 0; bx < blocks_x; ++bx) {
                double block[dct::kBlockSize];
                for (int y = 0; y < 8; ++y) {
                    const std::uint32_t sy = std::min(by * 8 + y, H - 1);  // replicate pad
                    for (int x = 0; x < 8; ++x) {
                        const std::uint32_t sx = std::min(bx * 8 + x, W - 1);
                        block[y * 8 + x] = static_cast<double>(plane[sy * W + sx]) - 128.0;
                    }
                }
                double coeffs[dct::kBlockSize];
                dct::forward_8x8(block, coeffs);

                std::int32_t zz[dct::kBlockSize];
                for (int k = 0; k < dct::kBlockSize; ++k) {
                    const int r = dct::kZigzag[k];
                    zz[k] = static_cast<std::int32_t>(std::lround(coeffs[r] / qt[r]));
                }

                const std::int32_t diff = zz[0] - prev_dc;
                prev_dc = zz[0];
                if (diff == 0) {
                    push_plain(tokens, freqs, kEob);  // positionally a zero DC diff
                } else {
                    push_value_token(tokens, freqs, 0, diff);
                }

                unsigned run = 0;
                for (int k = 1; k < dct::kBlockSize; ++k) {
                    if (zz[k] == 0) {
                        ++run;
                        continue;
                    }
                    while (run > 15) {
                        push_plain(tokens, freqs, kZrl);
                        run -= 16;
                    }
                    push_value_token(tokens, freqs, run, zz[k]);
                    run = 0;
                }
                if (run > 0) push_plain(tokens, freqs, kEob);
            }
        }
    }

    StreamHeader h;
    h.mode = CodecMode::lossy;
    h.shape = t.shape;
    h.qf = static_cast<std::uint8_t>(qf);
    h.dequant_scale = q.scale;
    h.dequant_offset = q.offset;
    return assemble_stream(h, tokens, freqs);
}

FeatureTensor decode_lossy(const EncodedStream& s) {
    const ParsedStream p = parse_stream(s.bytes);
    if (p.header.mode != CodecMode::lossy) {
        throw CodecError("stream mode is not lossy");
    }
    const std::array<int, dct::kBlockSize> qt = dct::scaled_quant_table(p.header.qf);
    const std::uint32_t H = p.header.shape.h;
    const std::uint32_t W = p.header.shape.w;
    const std::uint32_t blocks_y = (H + 7) / 8;
    const std::uint32_t blocks_x = (W + 7) / 8;

    FeatureTensor t = FeatureTensor::zeros(p.header.shape);
    huffman::Decoder dec(p.table);
    BitReader br(p.payload);

    for (std::uint32_t c = 0; c < p.header.shape.c; ++c) {
        std::int32_t prev_dc = 0;
        for (std::uint32_t by = 0; by < blocks_y; ++by) {
            for (std::uint32_t bx = 0; bx < blocks_x; ++bx) {
                std::int32_t zz[dct::kBlockSize] = {};

                const std::uint16_t dc_sym = dec.decode(br);
                if ((dc_sym >> 5) != 0) throw CodecError("invalid DC token");
                const unsigned dc_size = dc_sym & 31;
                if (dc_size > 16) throw CodecError("invalid DC size");
                const std::int32_t diff =
                    dc_size == 0 ? 0 : amplitude_value(br.get_bits(dc_size), dc_size);
                prev_dc += diff;
                zz[0] = prev_dc;

                int k = 1;
                while (k < dct::kBlockSize) {
                    const std::uint16_t sym = dec.decode(br);
                    if (sym == kEob) break;
                    if (sym == kZrl) {
                        k += 16;
                        if (k > dct::kBlockSize) throw CodecError("zero run overflows block");
                        continue;
                    }
                    const unsigned run = sym >> 5;
                    const unsigned size = sym & 31;
                    if (run > 15 || size == 0 || size > 16) {
                        throw CodecError("invalid run/size token");
                    }
                    k += static_cast<int>(run);
                    if (k >= dct::kBlockSize) throw CodecError("token overflows block");
                    zz[k] = amplitude_value(br.get_bits(size), size);
                    ++k;
                }

                double coeffs[dct::kBlockSize];
                for (int i = 0; i < dct::kBlockSize; ++i) {
                    const int r = dct::kZigzag[i];
                    coeffs[r] = static_cast<double>(zz[i]) * qt[r];
                }
                double block[dct::kBlockSize];
                dct::inverse_8x8(coeffs, block);

                for (int y = 0; y < 8; ++y) {
                    const std::uint32_t ty = by * 8 + y;
                    if (ty >= H) break;  // padded rows are discarded
                    for (int x = 0; x < 8; ++x) {
                        const std::uint32_t tx = bx * 8 + x;
                        if (tx >= W) break;
                        const long v = std::lround(block[y * 8 + x] + 128.0);
                        const std::uint8_t q8 = static_cast<std::uint8_t>(std::clamp(v, 0l, 255l));
                        t.data[(static_cast<std::size_t>(c) * H + ty) * W + tx] =
                            dequantize_value(q8, p.header.dequant_scale, p.header.dequant_offset);
                    }
                }
            }
        }
    }
    return t;
}

FeatureTensor decode(const EncodedStream& s) {
    const ParsedStream p = parse_stream(s.bytes);
    return p.header.mode == CodecMode::lossless ? decode_lossless(s) : decode_lossy(s);
}

double compression_ratio(const FeatureTensor& t, const EncodedStream& s) {
    check_tensor(t);
    if (!(t.shape == s.header.shape)) {
        throw CodecError("stream does not encode this tensor (shape mismatch)");
    }
    return static_cast<double>(t.raw_bytes()) / static_cast<double>(s.total_bytes());
}

EncodedStream EncodedStream::from_bytes(std::vector<std::uint8_t> raw) {
    const ParsedStream p = parse_stream(raw);
    EncodedStream s;
    s.header = p.header;
    s.payload_offset = raw.size() - p.payload.size();
    s.bytes = std::move(raw);
    return s;
}

void EncodedStream::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to '" + path.string() + "'");
}

EncodedStream EncodedStream::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    return from_bytes(std::move(raw));
}

}  // namespace splitedge
