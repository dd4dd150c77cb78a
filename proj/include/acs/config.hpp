#pragma once

#include "acs/pipeline.hpp"

#include <optional>
#include <string>
#include <vector>

namespace acs {

// Fully resolved experiment description: what to sample, how, and which
// artifacts to write.
struct ExperimentConfig {
    std::string image_path;  // exactly one of image_path / corpus
    std::string corpus;
    std::string out_dir = "acs-out";
    RunConfig run;
    std::vector<Criterion> criteria = {Criterion::innovation, Criterion::measurement_error,
                                       Criterion::saliency, Criterion::uniform};
    bool emit_recon = true;
    bool emit_heatmaps = true;
    bool emit_traces = true;
};

// Command-line values that take precedence over the config file.
struct CliOverrides {
    std::optional<std::string> image;
    std::optional<std::string> corpus;
    std::optional<std::string> out;
    std::optional<std::string> allocator;
    std::optional<std::string> criteria;  // comma-separated
    std::optional<double> sr;
    std::optional<int> stages;
    std::optional<std::uint64_t> seed;
};

// Applies one `key = value` pair. Unknown keys and unparseable values are
// errors.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Line-oriented `key = value` file; blank lines and '#' comments are skipped.
ExperimentConfig parse_config_file(const std::string& path);

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& cli);

// Range and consistency checks. `need_input` additionally requires exactly
// one of image/corpus to be set.
void validate_config(const ExperimentConfig& cfg, bool need_input);

std::vector<Criterion> parse_criteria_list(const std::string& csv);

}  // namespace acs
