#include "acs/corpus.hpp"

#include <cstdio>
#include <random>
#include <stdexcept>

namespace acs {

namespace {

constexpr int kSide = 96;
constexpr int kQuad = kSide / 2;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

struct Draw {
    std::mt19937_64 eng;
    explicit Draw(std::uint64_t seed) : eng(seed) {}
    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
};

void paint_background(Image& im, Draw& d) {
    const int style = d.integer(0, 2);  // 0: constant, 1: horizontal ramp, 2: vertical ramp
    const double level = d.real(0.35, 0.65);
    const double range = d.real(0.1, 0.3);
    for (int r = 0; r < kSide; ++r) {
        for (int c = 0; c < kSide; ++c) {
            double v = level;
            if (style == 1) v = level - range / 2.0 + range * c / (kSide - 1.0);
            if (style == 2) v = level - range / 2.0 + range * r / (kSide - 1.0);
            im.at(r, c) = clamp01(v);
        }
    }
}

void paint_texture(Image& im, int kind, int r0, int c0, Draw& d) {
    const double lo = d.real(0.05, 0.2);
    const double hi = d.real(0.8, 0.95);
    switch (kind) {
        case 0: {  // checkerboard
            const int cell = d.integer(2, 4);
            for (int r = 0; r < kQuad; ++r)
                for (int c = 0; c < kQuad; ++c)
                    im.at(r0 + r, c0 + c) = (((r / cell) + (c / cell)) % 2 == 0) ? hi : lo;
            break;
        }
        case 1: {  // stripes
            const int period = d.integer(2, 5);
            const int axis = d.integer(0, 2);  // 0: rows, 1: cols, 2: diagonal
            for (int r = 0; r < kQuad; ++r)
                for (int c = 0; c < kQuad; ++c) {
                    const int t = (axis == 0) ? r : (axis == 1) ? c : r + c;
                    im.at(r0 + r, c0 + c) = ((t / period) % 2 == 0) ? hi : lo;
                }
            break;
        }
        case 2: {  // incompressible noise
            for (int r = 0; r < kQuad; ++r)
                for (int c = 0; c < kQuad; ++c) im.at(r0 + r, c0 + c) = d.real(0.1, 0.9);
            break;
        }
        case 3: {  // fine checkerboard with noise on top
            const double amp = d.real(0.08, 0.15);
            for (int r = 0; r < kQuad; ++r)
                for (int c = 0; c < kQuad; ++c) {
                    const double base = ((r / 2 + c / 2) % 2 == 0) ? hi : lo;
                    im.at(r0 + r, c0 + c) = clamp01(base + d.real(-amp, amp));
                }
            break;
        }
        default:
            throw std::logic_error("corpus: bad texture kind");
    }
}

}  // namespace

std::vector<CorpusImage> make_synthetic_corpus(const std::string& corpus, std::uint64_t seed) {
    if (corpus != "heterogeneous16")
        throw std::invalid_argument("unknown corpus: " + corpus);

    Draw d(seed);
    std::vector<CorpusImage> out;
    out.reserve(16);
    for (int i = 0; i < 16; ++i) {
        const int kind = i / 4;      // every texture kind appears in
        const int quadrant = i % 4;  // every quadrant position
        Image im = make_image(kSide, kSide);
        paint_background(im, d);
        const int r0 = (quadrant / 2) * kQuad;
        const int c0 = (quadrant % 2) * kQuad;
        paint_texture(im, kind, r0, c0, d);

        CorpusImage ci;
        char name[8];
        std::snprintf(name, sizeof(name), "img%02d", i);
        ci.name = name;
        ci.image = std::move(im);
        out.push_back(std::move(ci));
    }
    return out;
}

}  // namespace acs
