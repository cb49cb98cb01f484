// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <string>

#include "splitedge/featcodec.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return SPLITEDGE_DATA_DIR; }

inline std::filesystem::path data_file(const std::string& name) { return data_dir() / name; }

// Local splitmix64 so test inputs do not depend on library internals.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double u01() { return (static_cast<double>(next() >> 11) + 0.5) / 9007199254740992.0; }
    std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next() % n); }
    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint32_t>(hi - lo + 1)));
    }
};

inline splitedge::FeatureTensor random_tensor(Rng& rng, splitedge::Shape3 shape,
                                              double nonzero_prob) {
    splitedge::FeatureTensor t = splitedge::FeatureTensor::zeros(shape);
    for (auto& v : t.data) {
        if (rng.u01() < nonzero_prob) {
            // full signed 16-bit range, extremes included
            v = static_cast<std::int16_t>(rng.next() & 0xFFFF);
            if (v == 0) v = 1;
        }
    }
    return t;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        dir_ = std::filesystem::temp_directory_path() /
               ("splitedge_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    [[nodiscard]] std::filesystem::path path(const std::string& name) const { return dir_ / name; }

private:
    std::filesystem::path dir_;
};

}  // namespace testsupport
