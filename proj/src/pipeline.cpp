#include "acs/pipeline.hpp"

#include "acs/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace acs {

namespace {

BudgetLedger ledger_for(const Image& img, const RunConfig& cfg) {
    return make_ledger(img.height, img.width, cfg.block, cfg.sr, cfg.sr_init, cfg.stages,
                       cfg.sr_is);
}

void check_matrix(const RunConfig& cfg, const SensingMatrix& mat) {
    if (mat.block() != cfg.block)
        throw std::invalid_argument("pipeline: operator block size does not match the config");
    if (mat.seed() != cfg.seed)
        throw std::invalid_argument("pipeline: operator seed does not match the config");
}

}  // namespace

AllocationPlan plan_allocation(const BudgetLedger& ledger, const StageCallbacks& cb) {
    if (!cb.score) throw std::invalid_argument("plan_allocation: score callback is required");

    const int nb = ledger.n_blocks;
    const int cap_full = ledger.block_capacity;
    const int S = ledger.stages;

    AllocationPlan plan;
    plan.init_per_block = ledger.init_per_block;
    plan.is_per_block = ledger.is_per_block;
    plan.block_capacity = cap_full;
    plan.stages.reserve(static_cast<std::size_t>(S));

    std::vector<int> cum(static_cast<std::size_t>(nb), ledger.init_per_block);
    int committed = nb * ledger.init_per_block;
    int carry = 0;

    for (int s = 1; s <= S; ++s) {
        for (int& c : cum) c += ledger.is_per_block;
        committed += nb * ledger.is_per_block;

        std::vector<double> scores = cb.score(s, cum);
        if (scores.size() != static_cast<std::size_t>(nb))
            throw std::invalid_argument("plan_allocation: score callback returned a bad length");

        const int cap_s = static_cast<int>(static_cast<long long>(s) * cap_full / S);
        std::vector<int> room(static_cast<std::size_t>(nb));
        long long head = 0;
        for (int n = 0; n < nb; ++n) {
            const int r = cap_s - cum[static_cast<std::size_t>(n)];
            if (r < 0)
                throw std::logic_error("plan_allocation: probe sampling overran the stage ceiling");
            room[static_cast<std::size_t>(n)] = r;
            head += r;
        }

        // The last stage takes whatever is still owed so the total is exact;
        // earlier stages take their scheduled share plus anything deferred.
        const long long budget = (s < S)
            ? static_cast<long long>(ledger.adaptive_budget[static_cast<std::size_t>(s - 1)]) + carry
            : static_cast<long long>(ledger.total_target) - committed;
        if (budget < 0)
            throw std::logic_error("plan_allocation: committed samples overran the target");
        const int spend = static_cast<int>(budget < head ? budget : head);
        if (s == S && budget > head)
            throw std::logic_error("plan_allocation: final stage cannot absorb the budget");

        AllocationPlan::Stage st;
        st.allocated = apportion(scores, spend, room);
        st.cap = cap_s;
        st.budget = static_cast<int>(budget);
        st.spent = spend;
        carry = static_cast<int>(budget) - spend;
        st.carried = carry;
        for (int n = 0; n < nb; ++n) cum[static_cast<std::size_t>(n)] += st.allocated[static_cast<std::size_t>(n)];
        committed += spend;
        st.cumulative = cum;
        plan.stages.push_back(std::move(st));

        if (cb.after_allocation) cb.after_allocation(s, cum);
    }

    plan.final_counts = cum;
    plan.total = committed;
    if (plan.total != ledger.total_target)
        throw std::logic_error("plan_allocation: total drifted off the ledger target");
    return plan;
}

AcsResult run_acs(const Image& img, const RunConfig& cfg) {
    return run_acs(img, cfg, build_matrix(cfg.seed, cfg.block));
}

AcsResult run_acs(const Image& img, const RunConfig& cfg, const SensingMatrix& mat) {
    check_matrix(cfg, mat);
    const BudgetLedger ledger = ledger_for(img, cfg);
    const BlockGrid grid = partition(img, cfg.block);
    const BlockLayout& layout = grid.layout;
    const int nb = layout.count();

    MeasurementSet ms(nb, ledger.block_capacity, cfg.seed);
#pragma omp parallel for schedule(static)
    for (int n = 0; n < nb; ++n)
        extend_measurements(ms, n, grid.blocks[static_cast<std::size_t>(n)], mat,
                            ledger.init_per_block);

    struct PendingTrace {
        std::vector<double> alpha;
        double probe_psnr = 0.0;
    };
    std::vector<PendingTrace> pending;
    pending.reserve(static_cast<std::size_t>(cfg.stages));

    StageCallbacks cb;
    cb.score = [&](int /*stage*/, const std::vector<int>& cum) {
        // The pre-probe estimate is reconstructed before the new rows land so
        // innovation sees the measurement set as it was.
        Image before;
        if (cfg.allocator == Criterion::innovation)
            before = reconstruct(ms, mat, layout, cfg.probe_solver);

#pragma omp parallel for schedule(static)
        for (int n = 0; n < nb; ++n)
            extend_measurements(ms, n, grid.blocks[static_cast<std::size_t>(n)], mat,
                                cum[static_cast<std::size_t>(n)]);
        const Image probe = reconstruct(ms, mat, layout, cfg.probe_solver);

        ScoreVector sv;
        switch (cfg.allocator) {
            case Criterion::innovation:
                sv = innovation_scores(before, probe, layout);
                break;
            case Criterion::measurement_error:
                // Residual of the current estimate against the measurements
                // it was reconstructed from. A data-consistent solve leaves
                // only rounding dust here, so scores below the noise floor
                // are zeroed to let the documented all-zero fallback engage.
                sv = measurement_error_scores(ms, mat, probe, layout);
                for (double& v : sv.values)
                    if (v < 1e-18) v = 0.0;
                break;
            case Criterion::saliency:
                sv = saliency_scores(probe, layout);
                break;
            case Criterion::uniform:
                sv.criterion = Criterion::uniform;
                sv.values.assign(static_cast<std::size_t>(nb), 1.0);
                break;
        }
        pending.push_back({sv.values, psnr(probe, img)});
        return sv.values;
    };
    cb.after_allocation = [&](int /*stage*/, const std::vector<int>& cum) {
#pragma omp parallel for schedule(static)
        for (int n = 0; n < nb; ++n)
            extend_measurements(ms, n, grid.blocks[static_cast<std::size_t>(n)], mat,
                                cum[static_cast<std::size_t>(n)]);
    };

    AcsResult result;
    result.plan = plan_allocation(ledger, cb);
    result.image = reconstruct(ms, mat, layout, cfg.final_solver);

    result.traces.reserve(result.plan.stages.size());
    for (std::size_t s = 0; s < result.plan.stages.size(); ++s) {
        StageTrace t;
        t.stage = static_cast<int>(s) + 1;
        t.alpha = pending[s].alpha;
        t.probe_psnr = pending[s].probe_psnr;
        t.allocated = result.plan.stages[s].allocated;
        t.cumulative = result.plan.stages[s].cumulative;
        t.cap = result.plan.stages[s].cap;
        result.traces.push_back(std::move(t));
    }
    return result;
}

UniformResult run_uniform(const Image& img, const RunConfig& cfg) {
    return run_uniform(img, cfg, build_matrix(cfg.seed, cfg.block));
}

UniformResult run_uniform(const Image& img, const RunConfig& cfg, const SensingMatrix& mat) {
    check_matrix(cfg, mat);
    const BudgetLedger ledger = ledger_for(img, cfg);
    const BlockGrid grid = partition(img, cfg.block);
    const BlockLayout& layout = grid.layout;
    const int nb = layout.count();
    const int cap = ledger.block_capacity;

    const int base = static_cast<int>(std::floor(cfg.sr * cap + 0.5));
    std::vector<int> counts(static_cast<std::size_t>(nb), base);
    int diff = ledger.total_target - nb * base;
    for (int n = 0; diff != 0 && n < nb; ++n) {  // +-1 correction, lowest indices first
        counts[static_cast<std::size_t>(n)] += (diff > 0) ? 1 : -1;
        diff += (diff > 0) ? -1 : 1;
    }
    for (int n = 0; n < nb; ++n)
        if (counts[static_cast<std::size_t>(n)] < 0 || counts[static_cast<std::size_t>(n)] > cap)
            throw std::logic_error("run_uniform: corrected count left the valid range");

    MeasurementSet ms(nb, cap, cfg.seed);
#pragma omp parallel for schedule(static)
    for (int n = 0; n < nb; ++n)
        extend_measurements(ms, n, grid.blocks[static_cast<std::size_t>(n)], mat,
                            counts[static_cast<std::size_t>(n)]);

    UniformResult result;
    result.image = reconstruct(ms, mat, layout, cfg.final_solver);
    result.plan.init_per_block = 0;
    result.plan.is_per_block = 0;
    result.plan.block_capacity = cap;
    AllocationPlan::Stage st;
    st.allocated = counts;
    st.cumulative = counts;
    st.cap = cap;
    st.budget = ledger.total_target;
    st.spent = ledger.total_target;
    st.carried = 0;
    result.plan.stages.push_back(std::move(st));
    result.plan.final_counts = counts;
    result.plan.total = ledger.total_target;
    return result;
}

std::vector<ComparisonRow> run_comparison(const Image& img, const RunConfig& cfg,
                                          const std::vector<Criterion>& criteria) {
    return run_comparison(img, cfg, criteria, build_matrix(cfg.seed, cfg.block));
}

std::vector<ComparisonRow> run_comparison(const Image& img, const RunConfig& cfg,
                                          const std::vector<Criterion>& criteria,
                                          const SensingMatrix& mat) {
    if (criteria.empty())
        throw std::invalid_argument("run_comparison: no criteria given");
    std::vector<ComparisonRow> rows;
    rows.reserve(criteria.size());
    for (Criterion c : criteria) {
        ComparisonRow row;
        row.criterion = c;
        if (c == Criterion::uniform) {
            UniformResult r = run_uniform(img, cfg, mat);
            row.psnr = psnr(r.image, img);
            row.ssim = ssim(r.image, img);
            row.total_samples = r.plan.total;
            row.plan = std::move(r.plan);
        } else {
            RunConfig sub = cfg;
            sub.allocator = c;
            AcsResult r = run_acs(img, sub, mat);
            row.psnr = psnr(r.image, img);
            row.ssim = ssim(r.image, img);
            row.total_samples = r.plan.total;
            row.plan = std::move(r.plan);
            row.traces = std::move(r.traces);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace acs
