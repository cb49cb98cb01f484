// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "splitedge/featcodec.hpp"

namespace splitedge {

/// Raw tensor file: magic "FTR1", shape as three u32 LE, then c*h*w
/// little-endian i16 values.
void write_ftr(const std::filesystem::path& path, const FeatureTensor& t);
FeatureTensor read_ftr(const std::filesystem::path& path);

}  // namespace splitedge
