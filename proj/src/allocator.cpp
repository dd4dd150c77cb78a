#include "acs/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace acs {

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::innovation: return "innovation";
        case Criterion::measurement_error: return "error";
        case Criterion::saliency: return "saliency";
        case Criterion::uniform: return "uniform";
    }
    throw std::logic_error("to_string: bad criterion");
}

Criterion parse_criterion(const std::string& name) {
    if (name == "innovation") return Criterion::innovation;
    if (name == "error") return Criterion::measurement_error;
    if (name == "saliency") return Criterion::saliency;
    if (name == "uniform") return Criterion::uniform;
    throw std::invalid_argument("unknown criterion: " + name);
}

namespace {

void require_layout_match(const Image& img, const BlockLayout& l, const char* op) {
    if (img.height != l.orig_height || img.width != l.orig_width)
        throw std::invalid_argument(std::string(op) + ": image does not match the layout");
}

// Sums f(r, c) over the in-image pixels of each block.
template <typename F>
std::vector<double> per_block_sum(const BlockLayout& l, F&& f) {
    std::vector<double> out(static_cast<std::size_t>(l.count()), 0.0);
    const int nb = l.count();
#pragma omp parallel for schedule(static)
    for (int n = 0; n < nb; ++n) {
        const int br = n / l.cols;
        const int bc = n % l.cols;
        const int r0 = br * l.block;
        const int c0 = bc * l.block;
        const int r1 = std::min(r0 + l.block, l.orig_height);
        const int c1 = std::min(c0 + l.block, l.orig_width);
        double acc = 0.0;
        for (int r = r0; r < r1; ++r)
            for (int c = c0; c < c1; ++c) acc += f(r, c);
        out[static_cast<std::size_t>(n)] = acc;
    }
    return out;
}

}  // namespace

ScoreVector innovation_scores(const Image& prev, const Image& probe, const BlockLayout& layout) {
    require_layout_match(prev, layout, "innovation_scores");
    if (!prev.same_shape(probe))
        throw std::invalid_argument("innovation_scores: images differ in shape");
    ScoreVector sv;
    sv.criterion = Criterion::innovation;
    sv.values = per_block_sum(layout, [&](int r, int c) {
        const double d = probe.at(r, c) - prev.at(r, c);
        return d * d;
    });
    return sv;
}

ScoreVector measurement_error_scores(const MeasurementSet& ms, const SensingMatrix& mat,
                                     const Image& estimate, const BlockLayout& layout) {
    require_layout_match(estimate, layout, "measurement_error_scores");
    if (ms.block_count() != layout.count())
        throw std::invalid_argument("measurement_error_scores: measurement set does not match the layout");
    if (mat.block() != layout.block)
        throw std::invalid_argument("measurement_error_scores: operator block size does not match the layout");

    const BlockGrid grid = partition(estimate, layout.block);
    ScoreVector sv;
    sv.criterion = Criterion::measurement_error;
    sv.values.assign(static_cast<std::size_t>(layout.count()), 0.0);
    const int nb = layout.count();
#pragma omp parallel for schedule(static)
    for (int n = 0; n < nb; ++n) {
        const int m = ms.count(n);
        if (m == 0) continue;
        const std::vector<double> yhat =
            measure(grid.blocks[static_cast<std::size_t>(n)], mat, 1, m);
        const std::span<const double> y = ms.values(n);
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
            const double d = y[static_cast<std::size_t>(i)] - yhat[static_cast<std::size_t>(i)];
            acc += d * d;
        }
        sv.values[static_cast<std::size_t>(n)] = acc;
    }
    return sv;
}

ScoreVector saliency_scores(const Image& estimate, const BlockLayout& layout) {
    require_layout_match(estimate, layout, "saliency_scores");
    const Image& im = estimate;
    auto px = [&](int r, int c) {
        // edge replication
        if (r < 0) r = 0;
        if (r >= im.height) r = im.height - 1;
        if (c < 0) c = 0;
        if (c >= im.width) c = im.width - 1;
        return im.at(r, c);
    };
    ScoreVector sv;
    sv.criterion = Criterion::saliency;
    sv.values = per_block_sum(layout, [&](int r, int c) {
        const double lap = 4.0 * im.at(r, c) - px(r - 1, c) - px(r + 1, c) - px(r, c - 1) - px(r, c + 1);
        return lap * lap;
    });
    return sv;
}

std::vector<int> apportion(const std::vector<double>& scores, int budget,
                           const std::vector<int>& caps) {
    const std::size_t n = scores.size();
    if (caps.size() != n)
        throw std::invalid_argument("apportion: scores and caps differ in length");
    if (n == 0) throw std::invalid_argument("apportion: no blocks");
    if (budget < 0) throw std::invalid_argument("apportion: negative budget");
    long long cap_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(scores[i] >= 0.0) || !std::isfinite(scores[i]))
            throw std::invalid_argument("apportion: scores must be finite and non-negative");
        if (caps[i] < 0) throw std::invalid_argument("apportion: negative cap");
        cap_sum += caps[i];
    }
    if (budget > cap_sum)
        throw std::invalid_argument("apportion: budget exceeds total remaining capacity");

    std::vector<int> alloc(n, 0);
    int remaining = budget;
    while (remaining > 0) {
        std::vector<std::size_t> active;
        active.reserve(n);
        double wsum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (alloc[i] < caps[i]) {
                active.push_back(i);
                wsum += scores[i];
            }
        if (active.empty())
            throw std::logic_error("apportion: ran out of capacity mid-split");

        // Quotas: proportional to score, or uniform once no open block carries
        // any weight.
        const bool uniform = !(wsum > 0.0);
        std::vector<double> frac(active.size());
        std::vector<int> give(active.size());
        long long base_sum = 0;
        for (std::size_t a = 0; a < active.size(); ++a) {
            const double w = uniform ? 1.0 : scores[active[a]];
            const double q = remaining * (w / (uniform ? static_cast<double>(active.size()) : wsum));
            const double fl = std::floor(q);
            give[a] = static_cast<int>(fl);
            frac[a] = q - fl;
            base_sum += give[a];
        }
        long long leftover = remaining - base_sum;

        std::vector<std::size_t> order(active.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            if (frac[x] != frac[y]) return frac[x] > frac[y];
            return active[x] < active[y];  // ties break toward the lowest block index
        });
        for (std::size_t k = 0; leftover > 0 && k < order.size(); ++k, --leftover)
            give[order[k]] += 1;
        // Floating-point drift can, in principle, push the floor sum one past
        // the budget; take units back from the smallest remainders.
        for (std::size_t k = order.size(); leftover < 0 && k > 0; --k) {
            if (give[order[k - 1]] > 0) {
                give[order[k - 1]] -= 1;
                ++leftover;
            }
        }

        int spent = 0;
        for (std::size_t a = 0; a < active.size(); ++a) {
            const std::size_t i = active[a];
            const int room = caps[i] - alloc[i];
            const int take = std::min(give[a], room);
            alloc[i] += take;
            spent += take;
        }
        if (spent == 0)
            throw std::logic_error("apportion: no progress");  // unreachable: budget <= cap_sum
        remaining -= spent;
    }
    return alloc;
}

}  // namespace acs
