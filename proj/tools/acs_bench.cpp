// Times the OpenMP kernels against their serial reference paths and checks
// that the two produce bit-identical output. On a single-core machine the
// timings mostly show scheduling overhead; the equality verdicts are the part
// that must always hold.
#include "acs/solver.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_of(int reps, F&& body) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        body();
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        if (ms < best) best = ms;
    }
    return best;
}

int report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-22s %9.1f ms %9.1f ms %7.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "bit-identical" : "MISMATCH");
    return match ? 0 : 1;
}

acs::Image random_image(int side, std::uint64_t seed) {
    acs::Image img = acs::make_image(side, side);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (double& v : img.data) v = uni(rng);
    return img;
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%-22s %12s %12s %8s\n", "kernel", "serial", "parallel", "speedup");

    int failures = 0;

    // Row orthonormalization of the 1024 x 1024 operator (B = 32).
    const acs::SensingMatrix mat_s = acs::build_matrix(42, 32, acs::Exec::serial);
    const acs::SensingMatrix mat_p = acs::build_matrix(42, 32, acs::Exec::parallel);
    const double mgs_s = best_of(2, [] { acs::build_matrix(7, 32, acs::Exec::serial); });
    const double mgs_p = best_of(2, [] { acs::build_matrix(7, 32, acs::Exec::parallel); });
    failures += report("build_matrix B=32", mgs_s, mgs_p, mat_s.raw() == mat_p.raw());

    // Per-block proximal-gradient reconstruction of a 256 x 256 image at a
    // quarter of the full sampling rate (64 blocks, 256 rows each).
    const acs::Image img = random_image(256, 9);
    const acs::BlockLayout layout = acs::layout_for(img.height, img.width, 32);
    const acs::BlockGrid grid = acs::partition(img, 32);
    acs::MeasurementSet ms(layout.count(), mat_s.dim(), mat_s.seed());
    for (int n = 0; n < layout.count(); ++n)
        acs::extend_measurements(ms, n, grid.blocks[static_cast<std::size_t>(n)], mat_s, 256);

    const acs::SolverConfig cfg = acs::final_config();
    acs::Image out_s, out_p;
    const double rec_s =
        best_of(2, [&] { out_s = acs::reconstruct(ms, mat_s, layout, cfg, acs::Exec::serial); });
    const double rec_p =
        best_of(2, [&] { out_p = acs::reconstruct(ms, mat_s, layout, cfg, acs::Exec::parallel); });
    failures += report("reconstruct 256x256", rec_s, rec_p, out_s.data == out_p.data);

    return failures == 0 ? 0 : 1;
}
