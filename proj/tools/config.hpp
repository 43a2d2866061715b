#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "devqe/bench.hpp"

namespace devqe::cli {

// The full effective configuration: one JSON document with every field
// defaulted, overridable by a --config file and then by flags.
struct RunConfig {
    int n = 4;
    int layers = 1;
    double coupling = 1.0;
    std::string axis = "Y";
    bool include_initial_ry = true;
    std::string optimizer = "de";
    double threshold = 1e-2;
    std::uint64_t seed = 0;
    int jobs = 1;

    struct De {
        int pop_mult = 1;
        double mutation_min = 0.5;
        double mutation_max = 1.0;
        std::string crossover = "bin";
        double crossover_rate = 0.7;
        std::string init = "halton";
        int maxiter = 25000;
        double abs_tol = 0.0;
        double rel_tol = 1e-5;
    } de;

    struct Spsa {
        int maxiter = 0;  // 0 -> 300 (L+1) n
        double alpha = 0.602;
        double gamma = 0.101;
        double a = 0.0;
        double c = 0.1;
        double stability = -1.0;
        double target_step = 0.1;
        int calibration_samples = 25;
    } spsa;

    struct Lbfgs {
        int memory = 10;
        int maxiter = 10000;
        long long max_evals = 0;  // 0 -> 1000 N_theta
        double g_tol = 1e-10;
        double f_tol = 1e-15;
        double c1 = 1e-4;
        double c2 = 0.9;
    } lbfgs;

    struct Sweep {
        std::vector<int> n_range;
        int n_opt = 20;
        std::uint64_t base_seed = 0;
        std::string records = "records.jsonl";
        std::string summary;  // empty -> derived from the records path
    } sweep;

    struct Landscape {
        int index_i = 0;
        int index_j = 1;
        int resolution = 101;
        double lo = -3.141592653589793;
        double hi = 3.141592653589793;
        std::string out = "landscape.csv";
    } landscape;
};

// Strict parse: unknown keys anywhere raise std::invalid_argument naming
// the offending key.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

nlohmann::json config_to_json(const RunConfig& config);

// "5" -> {5}; "3-8" -> {3..8}; "3,5,7" -> {3, 5, 7}.
std::vector<int> parse_n_list(const std::string& text);

// Translates the textual configuration into bench structures; validates
// names and ranges.
TrialConfig make_trial_config(const RunConfig& config);
ExperimentSpec make_experiment_spec(const RunConfig& config);

std::string derived_summary_path(const std::string& records_path);

}  // namespace devqe::cli
