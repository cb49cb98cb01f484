// SPDX-License-Identifier: Apache-2.0
#include "splitedge/dct.hpp"

#include <cmath>

namespace splitedge::dct {

namespace {

struct Basis {
    double c[kBlockDim][kBlockDim];  // c[u][x] = a(u) * cos((2x+1)u*pi/16)
    Basis() {
        const double pi = std::acos(-1.0);
        for (int u = 0; u < kBlockDim; ++u) {
            const double a = u == 0 ? std::sqrt(1.0 / kBlockDim) : std::sqrt(2.0 / kBlockDim);
            for (int x = 0; x < kBlockDim; ++x) {
                c[u][x] = a * std::cos((2 * x + 1) * u * pi / (2 * kBlockDim));
            }
        }
    }
};

const Basis& basis() {
    static const Basis b;
    return b;
}

}  // namespace

void forward_8x8(const double* in, double* out) {
    const Basis& b = basis();
    double tmp[kBlockSize];
    // rows
    for (int y = 0; y < kBlockDim; ++y) {
        for (int u = 0; u < kBlockDim; ++u) {
            double s = 0.0;
            for (int x = 0; x < kBlockDim; ++x) s += in[y * kBlockDim + x] * b.c[u][x];
            tmp[y * kBlockDim + u] = s;
        }
    }
    // columns
    for (int u = 0; u < kBlockDim; ++u) {
        for (int v = 0; v < kBlockDim; ++v) {
            double s = 0.0;
            for (int y = 0; y < kBlockDim; ++y) s += tmp[y * kBlockDim + u] * b.c[v][y];
            out[v * kBlockDim + u] = s;
        }
    }
}

void inverse_8x8(const double* in, double* out) {
    const Basis& b = basis();
    double tmp[kBlockSize];
    for (int v = 0; v < kBlockDim; ++v) {
        for (int x = 0; x < kBlockDim; ++x) {
            double s = 0.0;
            for (int u = 0; u < kBlockDim; ++u) s += in[v * kBlockDim + u] * b.c[u][x];
            tmp[v * kBlockDim + x] = s;
        }
    }
    for (int x = 0; x < kBlockDim; ++x) {
        for (int y = 0; y < kBlockDim; ++y) {
            double s = 0.0;
            for (int v = 0; v < kBlockDim; ++v) s += tmp[v * kBlockDim + x] * b.c[v][y];
            out[y * kBlockDim + x] = s;
        }
    }
}

const std::array<int, kBlockSize> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

const std::array<int, kBlockSize> kZigzagInv = [] {
    std::array<int, kBlockSize> inv{};
    for (int i = 0; i < kBlockSize; ++i) inv[kZigzag[i]] = i;
    return inv;
}();

const std::array<int, kBlockSize> kLuminanceQuant = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

std::array<int, kBlockSize> scaled_quant_table(int qf) {
    const int scale = qf < 50 ? 5000 / qf : 200 - 2 * qf;
    std::array<int, kBlockSize> t{};
    for (int i = 0; i < kBlockSize; ++i) {
        int q = (kLuminanceQuant[i] * scale + 50) / 100;
        t[i] = q < 1 ? 1 : q;
    }
    return t;
}

}  // namespace splitedge::dct
