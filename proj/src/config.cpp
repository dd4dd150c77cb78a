#include "acs/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace acs {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
}

}  // namespace

std::vector<Criterion> parse_criteria_list(const std::string& csv) {
    std::vector<Criterion> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        const std::string item = trim(csv.substr(pos, comma - pos));
        if (item.empty())
            throw std::invalid_argument("config: empty entry in criteria list");
        out.push_back(parse_criterion(item));
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("config: criteria list is empty");
    return out;
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "image") cfg.image_path = value;
    else if (key == "corpus") cfg.corpus = value;
    else if (key == "out") cfg.out_dir = value;
    else if (key == "sr") cfg.run.sr = parse_number<double>(key, value);
    else if (key == "sr_init") cfg.run.sr_init = parse_number<double>(key, value);
    else if (key == "sr_is") cfg.run.sr_is = parse_number<double>(key, value);
    else if (key == "stages") cfg.run.stages = parse_number<int>(key, value);
    else if (key == "block") cfg.run.block = parse_number<int>(key, value);
    else if (key == "allocator") cfg.run.allocator = parse_criterion(value);
    else if (key == "criteria") cfg.criteria = parse_criteria_list(value);
    else if (key == "seed") cfg.run.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "probe_iterations") cfg.run.probe_solver.iterations = parse_number<int>(key, value);
    else if (key == "final_iterations") cfg.run.final_solver.iterations = parse_number<int>(key, value);
    else if (key == "lambda_start") {
        cfg.run.probe_solver.lambda_start = parse_number<double>(key, value);
        cfg.run.final_solver.lambda_start = cfg.run.probe_solver.lambda_start;
    } else if (key == "lambda_end") {
        cfg.run.probe_solver.lambda_end = parse_number<double>(key, value);
        cfg.run.final_solver.lambda_end = cfg.run.probe_solver.lambda_end;
    } else if (key == "clamp") cfg.run.final_solver.clamp_output = parse_bool(key, value);
    else if (key == "emit_recon") cfg.emit_recon = parse_bool(key, value);
    else if (key == "emit_heatmaps") cfg.emit_heatmaps = parse_bool(key, value);
    else if (key == "emit_traces") cfg.emit_traces = parse_bool(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " has no key");
        apply_config_entry(cfg, key, value);
    }
    return cfg;
}

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& cli) {
    if (cli.image) cfg.image_path = *cli.image;
    if (cli.corpus) cfg.corpus = *cli.corpus;
    if (cli.out) cfg.out_dir = *cli.out;
    if (cli.allocator) cfg.run.allocator = parse_criterion(*cli.allocator);
    if (cli.criteria) cfg.criteria = parse_criteria_list(*cli.criteria);
    if (cli.sr) cfg.run.sr = *cli.sr;
    if (cli.stages) cfg.run.stages = *cli.stages;
    if (cli.seed) cfg.run.seed = *cli.seed;
}

void validate_config(const ExperimentConfig& cfg, bool need_input) {
    if (need_input) {
        const bool has_image = !cfg.image_path.empty();
        const bool has_corpus = !cfg.corpus.empty();
        if (has_image == has_corpus)
            throw std::invalid_argument("config: give exactly one of image or corpus");
    }
    if (!(cfg.run.sr_init > 0.0) || !(cfg.run.sr_init < 1.0))
        throw std::invalid_argument("config: sr_init must lie in (0, 1)");
    if (!(cfg.run.sr > cfg.run.sr_init) || !(cfg.run.sr <= 1.0))
        throw std::invalid_argument("config: sr must lie in (sr_init, 1]");
    if (cfg.run.stages < 1) throw std::invalid_argument("config: stages must be >= 1");
    if (cfg.run.block < 1 || cfg.run.block > 64)
        throw std::invalid_argument("config: block must lie in [1, 64]");
    if (cfg.run.probe_solver.iterations < 1 || cfg.run.final_solver.iterations < 1)
        throw std::invalid_argument("config: solver iterations must be >= 1");
    if (!(cfg.run.probe_solver.lambda_start >= cfg.run.probe_solver.lambda_end) ||
        !(cfg.run.probe_solver.lambda_end >= 0.0))
        throw std::invalid_argument("config: need lambda_start >= lambda_end >= 0");
    if (cfg.criteria.empty()) throw std::invalid_argument("config: criteria list is empty");
    if (cfg.out_dir.empty()) throw std::invalid_argument("config: out directory is empty");
}

}  // namespace acs
