#pragma once

#include "acs/allocator.hpp"
#include "acs/image.hpp"
#include "acs/sensing.hpp"
#include "acs/solver.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace acs {

struct RunConfig {
    double sr = 0.25;
    double sr_init = 0.02;
    double sr_is = -1.0;  // < 0: default (sr - sr_init) / (2 * stages)
    int stages = 4;
    int block = 32;
    Criterion allocator = Criterion::innovation;
    std::uint64_t seed = 42;
    SolverConfig probe_solver = lightweight_config();
    SolverConfig final_solver = final_config();
};

// Everything the staged sampler decided, stage by stage.
struct AllocationPlan {
    int init_per_block = 0;
    int is_per_block = 0;
    int block_capacity = 0;

    struct Stage {
        std::vector<int> allocated;   // adaptive allocation this stage
        std::vector<int> cumulative;  // per-block counts after this stage
        int cap = 0;                  // per-block ceiling in force
        int budget = 0;               // adaptive budget offered this stage
        int spent = 0;                // what fit under the caps
        int carried = 0;              // deferred to later stages
    };
    std::vector<Stage> stages;
    std::vector<int> final_counts;
    int total = 0;
};

struct StageTrace {
    int stage = 0;  // 1-based
    std::vector<double> alpha;
    std::vector<int> allocated;
    std::vector<int> cumulative;
    double probe_psnr = 0.0;  // probe reconstruction vs ground truth
    int cap = 0;
};

// Hooks that let the caller interleave measurement with the sampling
// bookkeeping. `score` receives the per-block counts after the stage's
// innovation probe has been added and must return one score per block; the
// optional `after_allocation` runs once the stage's adaptive counts are
// committed.
struct StageCallbacks {
    std::function<std::vector<double>(int stage, const std::vector<int>& cumulative)> score;
    std::function<void(int stage, const std::vector<int>& cumulative)> after_allocation;
};

// Runs the staged sampling arithmetic: initial counts, per-stage probe
// counts, score-driven apportionment under the per-stage ceilings
// floor(s * B^2 / S), and the final-stage correction that lands the total on
// the ledger's target exactly. Budget a stage cannot place under its ceiling
// is carried forward. Pure bookkeeping; measurement happens in the callbacks.
AllocationPlan plan_allocation(const BudgetLedger& ledger, const StageCallbacks& cb);

struct AcsResult {
    Image image;
    AllocationPlan plan;
    std::vector<StageTrace> traces;
};

// The adaptive pipeline: uniform initial sampling, then per stage a probe
// append, two cheap reconstructions, scoring by cfg.allocator, and
// proportional allocation; one full-quality reconstruction at the end.
// Ground truth is used only for the per-stage PSNR in the trace, never for
// allocation.
AcsResult run_acs(const Image& img, const RunConfig& cfg);
AcsResult run_acs(const Image& img, const RunConfig& cfg, const SensingMatrix& mat);

struct UniformResult {
    Image image;
    AllocationPlan plan;
};

// Non-adaptive baseline: every block measures round(sr * B^2) rows (first
// blocks adjusted by one so the total matches the ledger target), one
// full-quality reconstruction.
UniformResult run_uniform(const Image& img, const RunConfig& cfg);
UniformResult run_uniform(const Image& img, const RunConfig& cfg, const SensingMatrix& mat);

struct ComparisonRow {
    Criterion criterion = Criterion::innovation;
    double psnr = 0.0;
    double ssim = 0.0;
    int total_samples = 0;
    AllocationPlan plan;
    std::vector<StageTrace> traces;  // empty for the uniform baseline
};

// One run per criterion with the same seed and budget. "uniform" dispatches
// to run_uniform; everything else runs the staged pipeline with that scoring
// rule.
std::vector<ComparisonRow> run_comparison(const Image& img, const RunConfig& cfg,
                                          const std::vector<Criterion>& criteria);
std::vector<ComparisonRow> run_comparison(const Image& img, const RunConfig& cfg,
                                          const std::vector<Criterion>& criteria,
                                          const SensingMatrix& mat);

}  // namespace acs
