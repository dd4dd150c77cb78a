#include "acs/solver.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace acs {

namespace {

// Orthonormal DCT-II basis for one dimension: basis[k*b + j] is the weight of
// sample j in coefficient k.
struct DctPlan {
    int b = 0;
    std::vector<double> basis;
};

std::shared_ptr<const DctPlan> plan_for(int b) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const DctPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;

    auto plan = std::make_shared<DctPlan>();
    plan->b = b;
    plan->basis.resize(static_cast<std::size_t>(b) * b);
    const double norm0 = std::sqrt(1.0 / b);
    const double norm = std::sqrt(2.0 / b);
    for (int k = 0; k < b; ++k)
        for (int j = 0; j < b; ++j)
            plan->basis[static_cast<std::size_t>(k) * b + j] =
                (k == 0) ? norm0
                         : norm * std::cos(std::numbers::pi * (2.0 * j + 1.0) * k / (2.0 * b));
    cache.emplace(b, plan);
    return plan;
}

// out = C * X * C^T (forward) or C^T * X * C (inverse), via one temporary.
void transform2d(const DctPlan& p, const double* x, double* out, bool forward) {
    const int b = p.b;
    const double* c = p.basis.data();
    std::vector<double> tmp(static_cast<std::size_t>(b) * b, 0.0);
    for (int k = 0; k < b; ++k) {
        for (int r = 0; r < b; ++r) {
            const double w = forward ? c[static_cast<std::size_t>(k) * b + r]
                                     : c[static_cast<std::size_t>(r) * b + k];
            if (w == 0.0) continue;
            const double* xr = x + static_cast<std::size_t>(r) * b;
            double* tr = tmp.data() + static_cast<std::size_t>(k) * b;
            for (int j = 0; j < b; ++j) tr[j] += w * xr[j];
        }
    }
    for (int k = 0; k < b; ++k) {
        double* or_ = out + static_cast<std::size_t>(k) * b;
        for (int l = 0; l < b; ++l) or_[l] = 0.0;
        for (int j = 0; j < b; ++j) {
            const double* tr = tmp.data() + static_cast<std::size_t>(k) * b;
            for (int l = 0; l < b; ++l) {
                const double w = forward ? c[static_cast<std::size_t>(l) * b + j]
                                         : c[static_cast<std::size_t>(j) * b + l];
                or_[l] += tr[j] * w;
            }
        }
    }
}

int block_side_of(std::size_t tile_len) {
    const int b = static_cast<int>(std::lround(std::sqrt(static_cast<double>(tile_len))));
    if (b <= 0 || static_cast<std::size_t>(b) * b != tile_len)
        throw std::invalid_argument("prox_dct: tile length is not a perfect square");
    return b;
}

void validate(const SolverConfig& cfg) {
    if (cfg.iterations < 1)
        throw std::invalid_argument("solver: need at least one iteration");
    if (!(cfg.lambda_start >= cfg.lambda_end) || !(cfg.lambda_end >= 0.0))
        throw std::invalid_argument("solver: need lambda_start >= lambda_end >= 0");
}

}  // namespace

SolverConfig lightweight_config() {
    SolverConfig c;
    c.iterations = 6;
    return c;
}

SolverConfig final_config() {
    SolverConfig c;
    c.iterations = 24;
    c.clamp_output = true;
    return c;
}

double lambda_at(const SolverConfig& cfg, int k) {
    if (!cfg.geometric_schedule || cfg.iterations == 1 || cfg.lambda_start <= 0.0)
        return cfg.lambda_start;
    const double t = static_cast<double>(k) / static_cast<double>(cfg.iterations - 1);
    return cfg.lambda_start * std::pow(cfg.lambda_end / cfg.lambda_start, t);
}

double effective_lambda(const SolverConfig& cfg, int block, int k) {
    return lambda_at(cfg, k) * (static_cast<double>(block) / 4.0);
}

std::vector<double> gradient_step(const std::vector<double>& tile,
                                  std::span<const double> measurements,
                                  const SensingMatrix& mat) {
    const int n = mat.dim();
    if (tile.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("gradient_step: tile length does not match the operator");
    const int m = static_cast<int>(measurements.size());
    if (m > n) throw std::invalid_argument("gradient_step: more measurements than rows");

    std::vector<double> out = tile;
    for (int i = 0; i < m; ++i) {
        const double* r = mat.row(i).data();
        double ax = 0.0;
        for (int k = 0; k < n; ++k) ax += r[k] * tile[static_cast<std::size_t>(k)];
        const double resid = ax - measurements[static_cast<std::size_t>(i)];
        for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] -= resid * r[k];
    }
    return out;
}

std::vector<double> prox_dct(const std::vector<double>& tile, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("prox_dct: lambda must be non-negative");
    const int b = block_side_of(tile.size());
    auto plan = plan_for(b);

    std::vector<double> coeff(tile.size());
    transform2d(*plan, tile.data(), coeff.data(), true);
    for (std::size_t i = 1; i < coeff.size(); ++i) {  // index 0 is DC, left alone
        const double c = coeff[i];
        const double mag = std::abs(c) - lambda;
        coeff[i] = (mag > 0.0) ? (c < 0.0 ? -mag : mag) : 0.0;
    }
    std::vector<double> out(tile.size());
    transform2d(*plan, coeff.data(), out.data(), false);
    return out;
}

std::vector<double> reconstruct_block(
    std::span<const double> measurements, const SensingMatrix& mat, const SolverConfig& cfg,
    const std::function<void(const std::vector<double>&)>& on_iterate) {
    validate(cfg);
    const int n = mat.dim();
    const int m = static_cast<int>(measurements.size());
    if (m == 0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);

    // Least-squares re-fit of the block mean given the non-mean content. A
    // bare gradient step moves the mean toward the data at only (1 - M/n)
    // per iteration, so low-rate blocks would keep most of their initial
    // mean deficit through the whole loop, and the lingering deficit keeps
    // re-injecting junk the late (small) thresholds can no longer clean.
    // Re-fitting after every prox removes the deficit as soon as the prox
    // has cleaned the state. The mean is exempt from the l1 penalty, so the
    // re-fit strictly improves the composite objective.
    auto refit_mean = [&](std::vector<double>& x) {
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= n;
        double num = 0.0, den = 0.0;
        for (int i = 0; i < m; ++i) {
            const double* r = mat.row(i).data();
            double dot = 0.0, rowsum = 0.0;
            for (int k = 0; k < n; ++k) {
                dot += r[k] * (x[static_cast<std::size_t>(k)] - mean);
                rowsum += r[k];
            }
            num += rowsum * (measurements[static_cast<std::size_t>(i)] - dot);
            den += rowsum * rowsum;
        }
        if (den > 1e-12)
            for (double& v : x) v += num / den - mean;
    };

    std::vector<double> x = adjoint(measurements, mat, m);
    for (int k = 0; k < cfg.iterations; ++k) {
        x = prox_dct(gradient_step(x, measurements, mat), effective_lambda(cfg, mat.block(), k));
        refit_mean(x);
        if (on_iterate) on_iterate(x);
    }

    // Exact data consistency. The correction is orthogonal to the constant
    // direction (the mean residual is zero after the re-fit), so the fitted
    // mean survives this step.
    x = gradient_step(x, measurements, mat);
    if (cfg.clamp_output)
        for (double& v : x) v = (v < 0.0) ? 0.0 : (v > 1.0 ? 1.0 : v);
    return x;
}

Image reconstruct(const MeasurementSet& ms, const SensingMatrix& mat, const BlockLayout& layout,
                  const SolverConfig& cfg, Exec exec) {
    validate(cfg);
    if (ms.block_count() != layout.count())
        throw std::invalid_argument("reconstruct: measurement set does not match the layout");
    if (mat.block() != layout.block)
        throw std::invalid_argument("reconstruct: operator block size does not match the layout");

    BlockGrid grid;
    grid.layout = layout;
    grid.blocks.resize(static_cast<std::size_t>(layout.count()));
    const int n = layout.count();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i)
            grid.blocks[static_cast<std::size_t>(i)] = reconstruct_block(ms.values(i), mat, cfg);
    } else {
        for (int i = 0; i < n; ++i)
            grid.blocks[static_cast<std::size_t>(i)] = reconstruct_block(ms.values(i), mat, cfg);
    }
    return assemble(grid);
}

}  // namespace acs
