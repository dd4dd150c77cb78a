#include "acs/experiment.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

// Flags shared by `run` and `compare`. Only flags the user actually passed
// end up set, so they can override config-file values cleanly.
void add_shared_options(CLI::App& cmd, std::optional<std::string>& config_path,
                        acs::CliOverrides& cli) {
    cmd.add_option("--config", config_path, "line-oriented key = value config file");
    cmd.add_option("--image", cli.image, "input image (binary 8-bit PGM)");
    cmd.add_option("--corpus", cli.corpus, "synthetic corpus name instead of an image");
    cmd.add_option("--sr", cli.sr, "target sampling rate");
    cmd.add_option("--allocator", cli.allocator,
                   "allocation criterion: innovation | error | saliency | uniform");
    cmd.add_option("--stages", cli.stages, "number of adaptive stages");
    cmd.add_option("--seed", cli.seed, "matrix and corpus seed");
    cmd.add_option("--out", cli.out, "output directory");
}

acs::ExperimentConfig resolve(const std::optional<std::string>& config_path,
                              const acs::CliOverrides& cli) {
    acs::ExperimentConfig cfg;
    if (config_path) cfg = acs::parse_config_file(*config_path);
    acs::apply_overrides(cfg, cli);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-based adaptive compressive sensing"};
    app.require_subcommand(1);

    std::optional<std::string> run_config, cmp_config;
    acs::CliOverrides run_cli, cmp_cli;

    CLI::App* run = app.add_subcommand("run", "sample and reconstruct with one criterion");
    add_shared_options(*run, run_config, run_cli);

    CLI::App* compare = app.add_subcommand("compare", "run every criterion on the same budget");
    add_shared_options(*compare, cmp_config, cmp_cli);
    compare->add_option("--criteria", cmp_cli.criteria, "comma-separated criteria list");

    std::string corpus_name = "heterogeneous16";
    std::string corpus_out = "corpus";
    std::uint64_t corpus_seed = 42;
    CLI::App* gen = app.add_subcommand("gen-corpus", "write a synthetic corpus as PGM files");
    gen->add_option("--corpus", corpus_name, "corpus name");
    gen->add_option("--seed", corpus_seed, "generator seed");
    gen->add_option("--out", corpus_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            acs::write_corpus(corpus_name, corpus_seed, corpus_out);
            std::cout << "corpus written to " << corpus_out << "\n";
            return 0;
        }
        const bool compare_mode = compare->parsed();
        const acs::ExperimentConfig cfg =
            resolve(compare_mode ? cmp_config : run_config, compare_mode ? cmp_cli : run_cli);
        const int status = acs::run_experiment(cfg, compare_mode);
        if (status == 0) std::cout << "artifacts written to " << cfg.out_dir << "\n";
        return status;
    } catch (const std::exception& e) {
        std::cerr << "acs: " << e.what() << "\n";
        return 1;
    }
}
