// SPDX-License-Identifier: Apache-2.0
#include "splitedge/tensor_io.hpp"

#include <fstream>

#include "splitedge/bitio.hpp"

namespace splitedge {

namespace {
constexpr char kMagic[4] = {'F', 'T', 'R', '1'};
}

void write_ftr(const std::filesystem::path& path, const FeatureTensor& t) {
    if (t.data.size() != t.shape.elems()) {
        throw CodecError("tensor data length does not match its shape");
    }
    std::vector<std::uint8_t> out;
    out.reserve(16 + t.data.size() * 2);
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u32le(out, t.shape.c);
    put_u32le(out, t.shape.h);
    put_u32le(out, t.shape.w);
    for (std::int16_t v : t.data) {
        put_u16le(out, static_cast<std::uint16_t>(v));
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw Error("short write to '" + path.string() + "'");
}

FeatureTensor read_ftr(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path.string() + "'");
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
    ByteReader r(raw);
    if (r.remaining() < 16) throw CodecError("'" + path.string() + "': truncated tensor file");
    for (char m : kMagic) {
        if (r.u8() != static_cast<std::uint8_t>(m)) {
            throw CodecError("'" + path.string() + "': bad magic (not an FTR1 file)");
        }
    }
    FeatureTensor t;
    t.shape.c = r.u32le();
    t.shape.h = r.u32le();
    t.shape.w = r.u32le();
    const std::uint64_t n = t.shape.elems();
    if (n == 0) throw CodecError("'" + path.string() + "': zero dimension");
    if (r.remaining() != n * 2) {
        throw CodecError("'" + path.string() + "': data length does not match shape");
    }
    t.data.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        t.data.push_back(static_cast<std::int16_t>(r.u16le()));
    }
    return t;
}

}  // namespace splitedge
