#include "acs/experiment.hpp"

#include "acs/metrics.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace acs {

namespace {

namespace fs = std::filesystem;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("experiment: cannot write " + p.string());
    return out;
}

struct RunOutput {
    Criterion criterion;
    Image image;
    AllocationPlan plan;
    std::vector<StageTrace> traces;  // empty for the uniform baseline
    double psnr = 0.0;
    double ssim = 0.0;
};

RunOutput execute_one(const Image& img, const RunConfig& base, Criterion c,
                      const SensingMatrix& mat) {
    RunOutput out;
    out.criterion = c;
    if (c == Criterion::uniform) {
        UniformResult r = run_uniform(img, base, mat);
        out.image = std::move(r.image);
        out.plan = std::move(r.plan);
    } else {
        RunConfig sub = base;
        sub.allocator = c;
        AcsResult r = run_acs(img, sub, mat);
        out.image = std::move(r.image);
        out.plan = std::move(r.plan);
        out.traces = std::move(r.traces);
    }
    out.psnr = psnr(out.image, img);
    out.ssim = ssim(out.image, img);
    return out;
}

void write_trace(const fs::path& p, const Image& img, const RunConfig& cfg, const RunOutput& r) {
    std::ofstream out = open_out(p);
    out << "stage\tblock_index\talpha\tallocated\tcumulative\n";
    if (r.criterion != Criterion::uniform) {
        const BudgetLedger L =
            make_ledger(img.height, img.width, cfg.block, cfg.sr, cfg.sr_init, cfg.stages, cfg.sr_is);
        out << "# ledger sr=" << g17(L.sr) << " sr_init=" << g17(L.sr_init)
            << " sr_is=" << g17(L.sr_is) << " stages=" << L.stages << " blocks=" << L.n_blocks
            << " capacity=" << L.block_capacity << " total=" << L.total_target
            << " init_per_block=" << L.init_per_block << " is_per_block=" << L.is_per_block
            << " adaptive=";
        for (std::size_t s = 0; s < L.adaptive_budget.size(); ++s)
            out << (s ? "," : "") << L.adaptive_budget[s];
        out << "\n";
        for (const StageTrace& t : r.traces) {
            for (std::size_t n = 0; n < t.alpha.size(); ++n)
                out << t.stage << "\t" << n << "\t" << g17(t.alpha[n]) << "\t" << t.allocated[n]
                    << "\t" << t.cumulative[n] << "\n";
            out << "# stage " << t.stage << " cap " << t.cap << " probe_psnr "
                << g17(t.probe_psnr) << "\n";
        }
    } else {
        out << "# uniform baseline, total=" << r.plan.total << "\n";
        const AllocationPlan::Stage& st = r.plan.stages.front();
        for (std::size_t n = 0; n < st.allocated.size(); ++n)
            out << 1 << "\t" << n << "\t" << g17(0.0) << "\t" << st.allocated[n] << "\t"
                << st.cumulative[n] << "\n";
    }
}

void write_heatmaps(const fs::path& dir, const std::string& prefix, const Image& img,
                    const RunConfig& cfg, const RunOutput& r) {
    const BlockLayout layout = layout_for(img.height, img.width, cfg.block);
    for (std::size_t s = 0; s < r.plan.stages.size(); ++s) {
        const std::vector<int>& cum = r.plan.stages[s].cumulative;
        const std::string stem = prefix + "_heatmap_s" + std::to_string(s + 1);

        std::ofstream csv = open_out(dir / (stem + ".csv"));
        for (int br = 0; br < layout.rows; ++br) {
            for (int bc = 0; bc < layout.cols; ++bc)
                csv << (bc ? "," : "") << cum[static_cast<std::size_t>(br) * layout.cols + bc];
            csv << "\n";
        }

        Image vis = make_image(layout.rows, layout.cols);
        for (std::size_t n = 0; n < cum.size(); ++n)
            vis.data[n] = static_cast<double>(cum[n]) / r.plan.block_capacity;
        save_pgm(vis, (dir / (stem + ".pgm")).string());
    }
}

struct SummaryRow {
    std::string image;
    Criterion criterion;
    double psnr = 0.0;
    double ssim = 0.0;
    int total = 0;
};

}  // namespace

int run_experiment(const ExperimentConfig& cfg, bool compare_mode) {
    validate_config(cfg, true);

    std::vector<CorpusImage> inputs;
    if (!cfg.corpus.empty()) {
        inputs = make_synthetic_corpus(cfg.corpus, cfg.run.seed);
    } else {
        CorpusImage ci;
        ci.name = fs::path(cfg.image_path).stem().string();
        ci.image = load_pgm(cfg.image_path);
        inputs.push_back(std::move(ci));
    }
    const std::vector<Criterion> criteria =
        compare_mode ? cfg.criteria : std::vector<Criterion>{cfg.run.allocator};

    const SensingMatrix mat = build_matrix(cfg.run.seed, cfg.run.block);
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);

    const int n_inputs = static_cast<int>(inputs.size());
    std::vector<std::vector<SummaryRow>> rows(static_cast<std::size_t>(n_inputs));
    std::vector<std::string> errors(static_cast<std::size_t>(n_inputs));

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_inputs; ++i) {
        try {
            const CorpusImage& in = inputs[static_cast<std::size_t>(i)];
            for (Criterion c : criteria) {
                const RunOutput r = execute_one(in.image, cfg.run, c, mat);
                const std::string prefix = in.name + "_" + to_string(c);
                if (cfg.emit_recon)
                    save_pgm(r.image, (out_dir / (prefix + "_recon.pgm")).string());
                if (cfg.emit_traces)
                    write_trace(out_dir / (prefix + "_trace.txt"), in.image, cfg.run, r);
                if (cfg.emit_heatmaps) write_heatmaps(out_dir, prefix, in.image, cfg.run, r);
                rows[static_cast<std::size_t>(i)].push_back(
                    {in.name, c, r.psnr, r.ssim, r.plan.total});
            }
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (const std::string& e : errors)
        if (!e.empty()) throw std::runtime_error("experiment: " + e);

    std::ofstream summary = open_out(out_dir / "summary.csv");
    summary << "criterion,image,psnr,ssim,total_samples\n";
    for (std::size_t ci = 0; ci < criteria.size(); ++ci) {
        double psnr_sum = 0.0, ssim_sum = 0.0;
        long long total_sum = 0;
        for (int i = 0; i < n_inputs; ++i) {
            const SummaryRow& r = rows[static_cast<std::size_t>(i)][ci];
            summary << to_string(r.criterion) << "," << r.image << "," << g17(r.psnr) << ","
                    << g17(r.ssim) << "," << r.total << "\n";
            psnr_sum += r.psnr;
            ssim_sum += r.ssim;
            total_sum += r.total;
        }
        if (n_inputs > 1)
            summary << to_string(criteria[ci]) << ",mean," << g17(psnr_sum / n_inputs) << ","
                    << g17(ssim_sum / n_inputs) << "," << total_sum / n_inputs << "\n";
    }
    return 0;
}

void write_corpus(const std::string& corpus, std::uint64_t seed, const std::string& out_dir) {
    const std::vector<CorpusImage> imgs = make_synthetic_corpus(corpus, seed);
    fs::create_directories(out_dir);
    for (const CorpusImage& ci : imgs)
        save_pgm(ci.image, (fs::path(out_dir) / (ci.name + ".pgm")).string());
}

}  // namespace acs
