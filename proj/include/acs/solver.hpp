#pragma once

#include <functional>

#include "acs/image.hpp"
#include "acs/sensing.hpp"

namespace acs {

struct SolverConfig {
    int iterations = 24;
    double lambda_start = 0.1;       // intensity scale, see effective_lambda
    double lambda_end = 0.001;
    bool geometric_schedule = true;  // false: constant lambda_start
    bool clamp_output = false;       // clamp the result to [0, 1]
};

// 6 iterations, no clamp: the cheap probe used between sampling stages.
SolverConfig lightweight_config();
// 24 iterations, clamped output: the full-quality pass.
SolverConfig final_config();

// Schedule value for iteration k, in intensity units.
double lambda_at(const SolverConfig& cfg, int k);

// Coefficient-domain threshold applied at iteration k. Config lambdas name a
// feature amplitude in pixel intensity; a feature of amplitude a that the DCT
// captures in one coefficient at quarter-tile extent has coefficient
// magnitude near a * (block / 4), so the schedule is scaled by block / 4
// before it meets the transform.
double effective_lambda(const SolverConfig& cfg, int block, int k);

// r = x - A^T(Ax - y) over the first |y| rows. Unit step is valid because the
// rows are orthonormal, so A^T A has spectral norm 1.
std::vector<double> gradient_step(const std::vector<double>& tile,
                                  std::span<const double> measurements,
                                  const SensingMatrix& mat);

// Exact minimizer of (1/2)||z - x||^2 + lambda * |nonDC DCT coeffs of z|_1:
// orthonormal 2-D DCT, soft-threshold everything except the DC coefficient,
// inverse transform. Thresholding DC would bias block brightness, and block
// means are pinned by the data term anyway.
std::vector<double> prox_dct(const std::vector<double>& tile, double lambda);

// x0 = A^T y, then cfg.iterations rounds of prox_dct(gradient_step(x)) at
// effective_lambda, each followed by a least-squares re-fit of the block mean
// (a bare gradient step recovers the mean at only (1 - M/n) per round, which
// starves low-rate blocks), then one more gradient step so the output
// satisfies A x = y exactly (the final prox otherwise leaves a
// lambda_end-sized bias even at full sampling). Zero measurements reconstruct
// to the zero tile. When set, on_iterate sees the iterate after each round's
// re-fit; the trailing consistency step runs after the last call.
std::vector<double> reconstruct_block(
    std::span<const double> measurements, const SensingMatrix& mat, const SolverConfig& cfg,
    const std::function<void(const std::vector<double>&)>& on_iterate = {});

// Per-block reconstruction of every block in `ms`, assembled and cropped to
// the layout's original size. Blocks are independent, so the parallel path
// matches the serial one bit for bit.
Image reconstruct(const MeasurementSet& ms, const SensingMatrix& mat, const BlockLayout& layout,
                  const SolverConfig& cfg, Exec exec = Exec::parallel);

}  // namespace acs
