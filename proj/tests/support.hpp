#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>

#include "acs/image.hpp"
#include "acs/sensing.hpp"

namespace testing {

// One B = 32 operator for the whole test binary; building it is the single
// most expensive fixture, so every suite shares it.
inline const acs::SensingMatrix& shared_matrix() {
    static const acs::SensingMatrix mat = acs::build_matrix(42, 32);
    return mat;
}

inline acs::Image random_image(int height, int width, std::uint64_t seed, double lo = 0.0,
                               double hi = 1.0) {
    acs::Image img = acs::make_image(height, width);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    for (double& v : img.data) v = u(rng);
    return img;
}

// Fresh empty directory under the system temp root; callers clean up via
// remove_all when they care, the OS cleans the rest.
inline std::filesystem::path fresh_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    const auto dir = std::filesystem::temp_directory_path() /
                     ("acs_test_" + tag + "_" + std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testing
