#include "acs/allocator.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "apportion_oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace acs;

TEST_CASE("criterion names round-trip and reject typos") {
    for (Criterion c : {Criterion::innovation, Criterion::measurement_error, Criterion::saliency,
                        Criterion::uniform})
        CHECK(parse_criterion(to_string(c)) == c);
    CHECK(parse_criterion("error") == Criterion::measurement_error);
    CHECK_THROWS(parse_criterion("entropy"));
    CHECK_THROWS(parse_criterion(""));
}

TEST_CASE("innovation scores count only the pixels a block covers") {
    // 40x40 under B = 32: the right and bottom tiles cover 8-pixel strips.
    Image prev = make_image(40, 40, 0.5);
    Image probe = make_image(40, 40, 0.6);
    BlockLayout layout = layout_for(40, 40, 32);
    ScoreVector sv = innovation_scores(prev, probe, layout);
    REQUIRE(sv.values.size() == 4);
    CHECK(sv.values[0] == doctest::Approx(1024 * 0.01).epsilon(1e-9));  // full tile
    CHECK(sv.values[1] == doctest::Approx(256 * 0.01).epsilon(1e-9));   // 32x8 strip
    CHECK(sv.values[2] == doctest::Approx(256 * 0.01).epsilon(1e-9));   // 8x32 strip
    CHECK(sv.values[3] == doctest::Approx(64 * 0.01).epsilon(1e-9));    // 8x8 corner
}

TEST_CASE("innovation concentrates where the images differ") {
    Image prev = testing::random_image(64, 64, 41);
    Image probe = prev;
    double expected = 0.0;
    for (int r = 32; r < 64; ++r)
        for (int c = 0; c < 32; ++c) {
            probe.at(r, c) += 0.01 * r;
            expected += (0.01 * r) * (0.01 * r);
        }
    ScoreVector sv = innovation_scores(prev, probe, layout_for(64, 64, 32));
    CHECK(sv.values[2] == doctest::Approx(expected).epsilon(1e-9));
    CHECK(sv.values[0] == 0.0);
    CHECK(sv.values[1] == 0.0);
    CHECK(sv.values[3] == 0.0);
}

TEST_CASE("saliency ignores brightness shifts and flat content") {
    Image img = testing::random_image(64, 64, 43, 0.2, 0.7);
    Image shifted = img;
    for (double& v : shifted.data) v += 0.2;
    BlockLayout layout = layout_for(64, 64, 32);
    ScoreVector a = saliency_scores(img, layout);
    ScoreVector b = saliency_scores(shifted, layout);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-9));

    Image flat = make_image(64, 64, 0.5);
    for (double v : saliency_scores(flat, layout).values) CHECK(v == 0.0);
}

TEST_CASE("saliency ranks a checkered block above smooth ones") {
    Image img = make_image(64, 64, 0.5);
    for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 32; ++c) img.at(r, c) = ((r / 2 + c / 2) % 2) ? 0.8 : 0.2;
    ScoreVector sv = saliency_scores(img, layout_for(64, 64, 32));
    CHECK(sv.values[0] > 100.0 * sv.values[1]);
    CHECK(sv.values[0] > 100.0 * sv.values[2]);
    CHECK(sv.values[0] > 100.0 * sv.values[3]);
}

TEST_CASE("measurement error is the residual against a block's own rows") {
    const SensingMatrix& mat = testing::shared_matrix();
    Image img = testing::random_image(64, 64, 44);
    BlockGrid grid = partition(img, 32);
    MeasurementSet ms(4, mat.dim(), mat.seed());
    const int m = 200;
    for (int bidx = 0; bidx < 3; ++bidx)  // block 3 stays unmeasured
        extend_measurements(ms, bidx, grid.blocks[static_cast<std::size_t>(bidx)], mat, m);

    // The truth itself has zero residual everywhere.
    ScoreVector clean = measurement_error_scores(ms, mat, img, grid.layout);
    for (double v : clean.values) CHECK(v <= 1e-20);

    // Perturbing block 1 by a row-span vector scores exactly that vector's
    // energy, because the rows are orthonormal.
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    std::vector<double> coeffs(m);
    double energy = 0.0;
    for (double& v : coeffs) {
        v = u(rng);
        energy += v * v;
    }
    std::vector<double> bump = adjoint(coeffs, mat, m);
    BlockGrid touched = grid;
    for (int i = 0; i < mat.dim(); ++i) touched.blocks[1][static_cast<std::size_t>(i)] += bump[static_cast<std::size_t>(i)];
    ScoreVector sv = measurement_error_scores(ms, mat, assemble(touched), grid.layout);
    CHECK(sv.values[1] == doctest::Approx(energy).epsilon(1e-10));
    CHECK(sv.values[0] <= 1e-20);
    CHECK(sv.values[3] == 0.0);  // no measurements, no residual
}

TEST_CASE("apportion splits simple cases the obvious way") {
    CHECK(apportion({3.0, 1.0}, 4, {100, 100}) == std::vector<int>{3, 1});
    // Equal quotas: the leftover goes to the lowest indices.
    CHECK(apportion({1.0, 1.0, 1.0}, 4, {10, 10, 10}) == std::vector<int>{2, 1, 1});
    // No signal at all: uniform fallback.
    CHECK(apportion({0.0, 0.0, 0.0}, 5, {10, 10, 10}) == std::vector<int>{2, 2, 1});
    // Dominant block hits its cap; the spill goes to the others.
    CHECK(apportion({10.0, 0.1}, 10, {3, 20}) == std::vector<int>{3, 7});
    CHECK_THROWS(apportion({1.0, 1.0}, 5, {2, 2}));  // more budget than room
}

TEST_CASE("apportion agrees with the brute-force reference on fuzzed inputs") {
    std::mt19937_64 rng(4242);
    for (int it = 0; it < 300; ++it) {
        const int n = 1 + static_cast<int>(rng() % 30);
        std::vector<int> caps(static_cast<std::size_t>(n));
        long long room = 0;
        for (int& c : caps) {
            c = static_cast<int>(rng() % 41);
            room += c;
        }
        std::vector<double> scores(static_cast<std::size_t>(n), 0.0);
        const int flavor = static_cast<int>(rng() % 8);
        if (flavor == 0) {
            // all zero: fallback path
        } else if (flavor == 1) {
            for (double& s : scores) s = 1.0;  // maximal tie pressure
        } else {
            std::uniform_real_distribution<double> u(0.0, 10.0);
            for (double& s : scores) s = (rng() % 4 == 0) ? 0.0 : u(rng);
        }
        const int budget = room == 0 ? 0 : static_cast<int>(rng() % (room + 1));
        CHECK(apportion(scores, budget, caps) == oracle_apportion(scores, budget, caps));
    }
}
