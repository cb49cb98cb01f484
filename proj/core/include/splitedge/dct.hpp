// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

namespace splitedge::dct {

inline constexpr int kBlockDim = 8;
inline constexpr int kBlockSize = kBlockDim * kBlockDim;

/// Orthonormal 2-D type-II DCT of an 8x8 block (row-major in/out).
void forward_8x8(const double* in, double* out);

/// Inverse of forward_8x8 (type-III DCT with matching normalization).
void inverse_8x8(const double* in, double* out);

/// kZigzag[i] = raster index of the i-th coefficient in zigzag scan order.
extern const std::array<int, kBlockSize> kZigzag;

/// kZigzagInv[raster index] = position in zigzag order.
extern const std::array<int, kBlockSize> kZigzagInv;

/// Baseline luminance quantization table (raster order).
extern const std::array<int, kBlockSize> kLuminanceQuant;

/// Luminance table scaled by the conventional quality-factor rule:
/// scale = 5000/qf for qf < 50, else 200 - 2*qf; entries clamped to >= 1.
std::array<int, kBlockSize> scaled_quant_table(int qf);

}  // namespace splitedge::dct
