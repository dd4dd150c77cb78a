#pragma once

#include "acs/config.hpp"
#include "acs/corpus.hpp"

namespace acs {

// Runs every (image, criterion) pair, writes the requested artifacts plus
// summary.csv into cfg.out_dir, and returns a process exit status (0 on
// success). In compare mode each image runs once per entry of cfg.criteria;
// otherwise only cfg.run.allocator runs. Reruns with the same config produce
// byte-identical output directories.
int run_experiment(const ExperimentConfig& cfg, bool compare_mode);

// Writes the named corpus as PGM files (one per image) into out_dir.
void write_corpus(const std::string& corpus, std::uint64_t seed, const std::string& out_dir);

}  // namespace acs
