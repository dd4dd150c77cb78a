#pragma once

#include "acs/image.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace acs {

struct CorpusImage {
    std::string name;
    Image image;
};

// Named synthetic corpora for repeatable experiments. "heterogeneous16" is
// sixteen 96x96 images, each with exactly one high-frequency quadrant
// (checkerboard, stripes, noise, or a mix) over an otherwise flat or gently
// graded background. Deterministic for a given seed.
std::vector<CorpusImage> make_synthetic_corpus(const std::string& corpus, std::uint64_t seed);

}  // namespace acs
