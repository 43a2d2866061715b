#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace devqe::cli {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end()) {
            throw std::invalid_argument("unknown config key '" + prefix + key + "'");
        }
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

PauliOp axis_from_name(const std::string& name) {
    if (name == "X") return PauliOp::X;
    if (name == "Y") return PauliOp::Y;
    if (name == "Z") return PauliOp::Z;
    throw std::invalid_argument("axis must be X, Y or Z, got '" + name + "'");
}

CrossoverKind crossover_from_name(const std::string& name) {
    if (name == "bin") return CrossoverKind::Binomial;
    if (name == "exp") return CrossoverKind::Exponential;
    throw std::invalid_argument("crossover must be bin or exp, got '" + name + "'");
}

DEInit init_from_name(const std::string& name) {
    if (name == "halton") return DEInit::Halton;
    if (name == "uniform") return DEInit::Uniform;
    throw std::invalid_argument("init must be halton or uniform, got '" + name + "'");
}

}  // namespace

RunConfig config_from_json(const json& j) {
    RunConfig config;
    check_keys(j, "",
               {"n", "layers", "coupling", "axis", "include_initial_ry", "optimizer",
                "threshold", "seed", "jobs", "de", "spsa", "lbfgs", "sweep", "landscape"});
    read(j, "n", config.n);
    read(j, "layers", config.layers);
    read(j, "coupling", config.coupling);
    read(j, "axis", config.axis);
    read(j, "include_initial_ry", config.include_initial_ry);
    read(j, "optimizer", config.optimizer);
    read(j, "threshold", config.threshold);
    read(j, "seed", config.seed);
    read(j, "jobs", config.jobs);

    if (j.contains("de")) {
        const json& d = j.at("de");
        check_keys(d, "de.",
                   {"pop_mult", "mutation", "crossover", "crossover_rate", "init", "maxiter",
                    "abs_tol", "rel_tol"});
        read(d, "pop_mult", config.de.pop_mult);
        if (d.contains("mutation")) {
            const auto pair = d.at("mutation").get<std::vector<double>>();
            if (pair.size() != 2) {
                throw std::invalid_argument("de.mutation must be a [min, max] pair");
            }
            config.de.mutation_min = pair[0];
            config.de.mutation_max = pair[1];
        }
        read(d, "crossover", config.de.crossover);
        read(d, "crossover_rate", config.de.crossover_rate);
        read(d, "init", config.de.init);
        read(d, "maxiter", config.de.maxiter);
        read(d, "abs_tol", config.de.abs_tol);
        read(d, "rel_tol", config.de.rel_tol);
    }
    if (j.contains("spsa")) {
        const json& s = j.at("spsa");
        check_keys(s, "spsa.",
                   {"maxiter", "alpha", "gamma", "a", "c", "stability", "target_step",
                    "calibration_samples"});
        read(s, "maxiter", config.spsa.maxiter);
        read(s, "alpha", config.spsa.alpha);
        read(s, "gamma", config.spsa.gamma);
        read(s, "a", config.spsa.a);
        read(s, "c", config.spsa.c);
        read(s, "stability", config.spsa.stability);
        read(s, "target_step", config.spsa.target_step);
        read(s, "calibration_samples", config.spsa.calibration_samples);
    }
    if (j.contains("lbfgs")) {
        const json& l = j.at("lbfgs");
        check_keys(l, "lbfgs.",
                   {"memory", "maxiter", "max_evals", "g_tol", "f_tol", "c1", "c2"});
        read(l, "memory", config.lbfgs.memory);
        read(l, "maxiter", config.lbfgs.maxiter);
        read(l, "max_evals", config.lbfgs.max_evals);
        read(l, "g_tol", config.lbfgs.g_tol);
        read(l, "f_tol", config.lbfgs.f_tol);
        read(l, "c1", config.lbfgs.c1);
        read(l, "c2", config.lbfgs.c2);
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        check_keys(s, "sweep.", {"n_range", "n_opt", "base_seed", "records", "summary"});
        read(s, "n_range", config.sweep.n_range);
        read(s, "n_opt", config.sweep.n_opt);
        read(s, "base_seed", config.sweep.base_seed);
        read(s, "records", config.sweep.records);
        read(s, "summary", config.sweep.summary);
    }
    if (j.contains("landscape")) {
        const json& l = j.at("landscape");
        check_keys(l, "landscape.", {"index_i", "index_j", "resolution", "lo", "hi", "out"});
        read(l, "index_i", config.landscape.index_i);
        read(l, "index_j", config.landscape.index_j);
        read(l, "resolution", config.landscape.resolution);
        read(l, "lo", config.landscape.lo);
        read(l, "hi", config.landscape.hi);
        read(l, "out", config.landscape.out);
    }
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config file " + path + ": " + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const RunConfig& config) {
    json j;
    j["n"] = config.n;
    j["layers"] = config.layers;
    j["coupling"] = config.coupling;
    j["axis"] = config.axis;
    j["include_initial_ry"] = config.include_initial_ry;
    j["optimizer"] = config.optimizer;
    j["threshold"] = config.threshold;
    j["seed"] = config.seed;
    j["jobs"] = config.jobs;
    j["de"] = {{"pop_mult", config.de.pop_mult},
               {"mutation", {config.de.mutation_min, config.de.mutation_max}},
               {"crossover", config.de.crossover},
               {"crossover_rate", config.de.crossover_rate},
               {"init", config.de.init},
               {"maxiter", config.de.maxiter},
               {"abs_tol", config.de.abs_tol},
               {"rel_tol", config.de.rel_tol}};
    j["spsa"] = {{"maxiter", config.spsa.maxiter},
                 {"alpha", config.spsa.alpha},
                 {"gamma", config.spsa.gamma},
                 {"a", config.spsa.a},
                 {"c", config.spsa.c},
                 {"stability", config.spsa.stability},
                 {"target_step", config.spsa.target_step},
                 {"calibration_samples", config.spsa.calibration_samples}};
    j["lbfgs"] = {{"memory", config.lbfgs.memory},
                  {"maxiter", config.lbfgs.maxiter},
                  {"max_evals", config.lbfgs.max_evals},
                  {"g_tol", config.lbfgs.g_tol},
                  {"f_tol", config.lbfgs.f_tol},
                  {"c1", config.lbfgs.c1},
                  {"c2", config.lbfgs.c2}};
    j["sweep"] = {{"n_range", config.sweep.n_range},
                  {"n_opt", config.sweep.n_opt},
                  {"base_seed", config.sweep.base_seed},
                  {"records", config.sweep.records},
                  {"summary", config.sweep.summary}};
    j["landscape"] = {{"index_i", config.landscape.index_i},
                      {"index_j", config.landscape.index_j},
                      {"resolution", config.landscape.resolution},
                      {"lo", config.landscape.lo},
                      {"hi", config.landscape.hi},
                      {"out", config.landscape.out}};
    return j;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string piece = text.substr(pos, comma - pos);
        const std::size_t dash = piece.find('-', 1);  // allow a leading sign
        try {
            if (dash != std::string::npos) {
                const int lo = std::stoi(piece.substr(0, dash));
                const int hi = std::stoi(piece.substr(dash + 1));
                if (hi < lo) throw std::invalid_argument("");
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            } else {
                out.push_back(std::stoi(piece));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse chain length list '" + text + "'");
        }
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty chain length list");
    return out;
}

TrialConfig make_trial_config(const RunConfig& config) {
    if (config.n < 2) throw std::invalid_argument("n must be >= 2");
    if (config.layers < 0) throw std::invalid_argument("layers must be >= 0");
    if (config.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

    TrialConfig trial;
    trial.n = config.n;
    trial.layers = config.layers;
    trial.coupling = config.coupling;
    trial.axis = axis_from_name(config.axis);
    trial.include_initial_ry = config.include_initial_ry;
    trial.optimizer = optimizer_from_name(config.optimizer);
    trial.success_threshold = config.threshold;
    trial.jobs = config.jobs;

    trial.de.population_multiplier = config.de.pop_mult;
    trial.de.mutation_min = config.de.mutation_min;
    trial.de.mutation_max = config.de.mutation_max;
    trial.de.crossover = crossover_from_name(config.de.crossover);
    trial.de.crossover_rate = config.de.crossover_rate;
    trial.de.init = init_from_name(config.de.init);
    trial.de.max_iterations = config.de.maxiter;
    trial.de.abs_tol = config.de.abs_tol;
    trial.de.rel_tol = config.de.rel_tol;

    trial.spsa.max_iterations = config.spsa.maxiter;
    trial.spsa.alpha = config.spsa.alpha;
    trial.spsa.gamma = config.spsa.gamma;
    trial.spsa.a = config.spsa.a;
    trial.spsa.c = config.spsa.c;
    trial.spsa.stability = config.spsa.stability;
    trial.spsa.target_step = config.spsa.target_step;
    trial.spsa.calibration_samples = config.spsa.calibration_samples;

    trial.lbfgs.memory = config.lbfgs.memory;
    trial.lbfgs.max_iterations = config.lbfgs.maxiter;
    trial.lbfgs.max_evaluations = config.lbfgs.max_evals;
    trial.lbfgs.g_tol = config.lbfgs.g_tol;
    trial.lbfgs.f_tol = config.lbfgs.f_tol;
    trial.lbfgs.armijo_c1 = config.lbfgs.c1;
    trial.lbfgs.wolfe_c2 = config.lbfgs.c2;
    return trial;
}

ExperimentSpec make_experiment_spec(const RunConfig& config) {
    if (config.sweep.n_range.empty()) {
        throw std::invalid_argument("sweep needs a non-empty n range (--n or sweep.n_range)");
    }
    for (int n : config.sweep.n_range) {
        if (n < 2) throw std::invalid_argument("n must be >= 2");
    }
    if (config.sweep.n_opt < 1) throw std::invalid_argument("n_opt must be >= 1");

    RunConfig base = config;
    base.n = config.sweep.n_range.front();

    ExperimentSpec spec;
    spec.n_range = config.sweep.n_range;
    spec.base = make_trial_config(base);
    spec.base.jobs = 1;  // parallelism goes to the trials
    spec.n_opt = config.sweep.n_opt;
    spec.base_seed = config.sweep.base_seed;
    spec.parallel_trials = config.jobs;
    spec.record_path = config.sweep.records;
    spec.summary_path = config.sweep.summary.empty()
                            ? derived_summary_path(config.sweep.records)
                            : config.sweep.summary;
    return spec;
}

std::string derived_summary_path(const std::string& records_path) {
    const std::size_t dot = records_path.find_last_of('.');
    const std::size_t slash = records_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return records_path + ".summary.csv";
    }
    return records_path.substr(0, dot) + ".summary.csv";
}

}  // namespace devqe::cli
