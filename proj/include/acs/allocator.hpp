#pragma once

#include "acs/image.hpp"
#include "acs/sensing.hpp"

#include <string>
#include <vector>

namespace acs {

enum class Criterion { innovation, measurement_error, saliency, uniform };

std::string to_string(Criterion c);
// Accepts "innovation", "error", "saliency", "uniform".
Criterion parse_criterion(const std::string& name);

struct ScoreVector {
    Criterion criterion = Criterion::innovation;
    std::vector<double> values;  // one non-negative score per block
};

// Per-block squared L2 norm of (probe - prev), summed over the pixels each
// block actually covers (padding is never scored).
ScoreVector innovation_scores(const Image& prev, const Image& probe, const BlockLayout& layout);

// Per-block ||y_n - A_{1:M_n} vec(block_n of estimate)||^2. A block with no
// measurements scores zero.
ScoreVector measurement_error_scores(const MeasurementSet& ms, const SensingMatrix& mat,
                                     const Image& estimate, const BlockLayout& layout);

// Per-block sum of squared 5-point Laplacian responses of the full image,
// with edge replication at the borders.
ScoreVector saliency_scores(const Image& estimate, const BlockLayout& layout);

// Splits an integer budget across blocks proportionally to their scores using
// largest-remainder rounding (leftover units go to the largest fractional
// parts, ties to the lowest block index). Allocations are clipped to the
// per-block remaining capacities in `caps`; clipped overflow is re-apportioned
// among the uncapped blocks by the same rule until everything is placed.
// A zero score sum falls back to a uniform split over uncapped blocks.
// Requires budget <= sum(caps).
std::vector<int> apportion(const std::vector<double>& scores, int budget,
                           const std::vector<int>& caps);

}  // namespace acs
