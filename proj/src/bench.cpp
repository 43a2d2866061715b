#include "devqe/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "devqe/parallel.hpp"
#include "devqe/rng.hpp"

namespace devqe {

namespace {

using nlohmann::json;

double resolve_delta(double final_energy, double e0) {
    return 1.0 - std::abs(final_energy / e0);
}

int nearest_spectrum_level(double energy, std::span<const SpectrumLevel> levels) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(levels.size()); ++i) {
        const double dist = std::abs(energy - levels[i].energy);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    return best;
}

}  // namespace

std::string optimizer_name(OptimizerKind kind) {
    switch (kind) {
        case OptimizerKind::De: return "de";
        case OptimizerKind::Spsa: return "spsa";
        case OptimizerKind::Lbfgs: return "lbfgs";
        case OptimizerKind::Hybrid: return "hybrid";
    }
    return "?";
}

OptimizerKind optimizer_from_name(const std::string& name) {
    if (name == "de") return OptimizerKind::De;
    if (name == "spsa") return OptimizerKind::Spsa;
    if (name == "lbfgs") return OptimizerKind::Lbfgs;
    if (name == "hybrid") return OptimizerKind::Hybrid;
    throw std::invalid_argument("unknown optimizer '" + name +
                                "' (expected de, spsa, lbfgs or hybrid)");
}

TrialRecord run_trial(const TrialConfig& config, std::uint64_t seed) {
    const IsingChain chain{config.n, config.coupling, config.axis};
    const Ansatz ansatz{config.n, config.layers, config.include_initial_ry};
    const Objective objective = make_energy_objective(ansatz, chain);
    const int dimension = objective.dimension;

    const auto start = std::chrono::steady_clock::now();
    OptResult outcome;
    try {
        switch (config.optimizer) {
            case OptimizerKind::De: {
                DEConfig de = config.de;
                de.seed = seed;
                de.jobs = config.jobs;
                outcome = de_minimize(objective, de);
                break;
            }
            case OptimizerKind::Spsa: {
                // The start point consumes the head of the seed's stream;
                // SPSA's own draws continue from it.
                Rng rng(seed);
                std::vector<double> x0(dimension);
                for (double& v : x0) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
                SpsaConfig spsa = config.spsa;
                if (spsa.max_iterations <= 0) {
                    spsa.max_iterations = 300 * (config.layers + 1) * config.n;
                }
                spsa.seed = rng.raw();
                outcome = spsa_minimize(objective, x0, spsa);
                break;
            }
            case OptimizerKind::Lbfgs: {
                Rng rng(seed);
                std::vector<double> x0(dimension);
                for (double& v : x0) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
                outcome = lbfgs_minimize(objective, make_parameter_shift_gradient(objective), x0,
                                         config.lbfgs);
                break;
            }
            case OptimizerKind::Hybrid: {
                DEConfig de = config.de;
                de.seed = seed;
                de.jobs = config.jobs;
                outcome = hybrid_minimize(objective, make_parameter_shift_gradient(objective), de,
                                          config.lbfgs);
                break;
            }
        }
    } catch (const std::exception&) {
        outcome = OptResult{};
        outcome.best_energy = std::numeric_limits<double>::quiet_NaN();
        outcome.converged = false;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    TrialRecord record;
    record.n = config.n;
    record.layers = config.layers;
    record.seed = seed;
    record.final_energy = outcome.best_energy;
    record.delta = resolve_delta(outcome.best_energy, ground_energy(chain));
    record.iterations = outcome.iterations;
    record.evaluations = outcome.evaluations;
    record.converged = outcome.converged;
    record.wall_time = elapsed.count();
    record.nearest_level = std::isnan(outcome.best_energy)
                               ? -1
                               : nearest_spectrum_level(outcome.best_energy,
                                                        exact_spectrum(chain));
    return record;
}

SuccessRateSummary success_rate(std::span<const TrialRecord> records, double threshold,
                                const std::string& optimizer_label) {
    if (records.empty()) throw std::invalid_argument("success_rate: no records");
    SuccessRateSummary summary;
    summary.n = records.front().n;
    summary.layers = records.front().layers;
    summary.optimizer = optimizer_label;
    summary.n_opt = static_cast<int>(records.size());
    for (const TrialRecord& record : records) {
        if (record.n != summary.n || record.layers != summary.layers) {
            throw std::invalid_argument("success_rate: records mix (n, layers) points");
        }
        if (record.delta <= threshold) ++summary.success_count;
    }
    summary.success_rate =
        static_cast<double>(summary.success_count) / static_cast<double>(summary.n_opt);

    // Wilson 95% interval half-width.
    const double z = 1.959963984540054;
    const double nn = summary.n_opt;
    const double p = summary.success_rate;
    const double denom = 1.0 + z * z / nn;
    summary.ci95 = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    return summary;
}

std::string to_json_line(const TrialRecord& record) {
    json j;
    j["n"] = record.n;
    j["layers"] = record.layers;
    j["seed"] = record.seed;
    if (std::isnan(record.final_energy)) {
        j["final_energy"] = nullptr;
        j["delta"] = nullptr;
    } else {
        j["final_energy"] = record.final_energy;
        j["delta"] = record.delta;
    }
    j["iterations"] = record.iterations;
    j["evaluations"] = record.evaluations;
    j["converged"] = record.converged;
    j["wall_time"] = record.wall_time;
    j["nearest_level"] = record.nearest_level;
    return j.dump();
}

TrialRecord trial_record_from_json(const std::string& line) {
    const json j = json::parse(line);
    TrialRecord record;
    record.n = j.at("n").get<int>();
    record.layers = j.at("layers").get<int>();
    record.seed = j.at("seed").get<std::uint64_t>();
    record.final_energy = j.at("final_energy").is_null()
                              ? std::numeric_limits<double>::quiet_NaN()
                              : j.at("final_energy").get<double>();
    record.delta = j.at("delta").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                           : j.at("delta").get<double>();
    record.iterations = j.at("iterations").get<long long>();
    record.evaluations = j.at("evaluations").get<long long>();
    record.converged = j.at("converged").get<bool>();
    record.wall_time = j.at("wall_time").get<double>();
    record.nearest_level = j.at("nearest_level").get<int>();
    return record;
}

std::vector<TrialRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    std::vector<TrialRecord> records;
    if (!in) return records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(trial_record_from_json(line));
    }
    return records;
}

SweepResult sweep(const ExperimentSpec& spec) {
    if (spec.n_range.empty()) throw std::invalid_argument("sweep: empty n_range");
    if (spec.n_opt < 1) throw std::invalid_argument("sweep: n_opt must be >= 1");

    // Records from an interrupted run; keyed by (n, seed).
    std::map<std::pair<int, std::uint64_t>, TrialRecord> done;
    if (!spec.record_path.empty()) {
        for (const TrialRecord& record : read_records(spec.record_path)) {
            if (record.layers != spec.base.layers) continue;
            done.insert_or_assign({record.n, record.seed}, record);
        }
    }

    struct Task {
        int n;
        std::uint64_t seed;
        std::size_t slot;
    };
    std::vector<Task> tasks;
    std::vector<TrialRecord> records(spec.n_range.size() * spec.n_opt);
    std::size_t slot = 0;
    for (int n : spec.n_range) {
        for (int i = 0; i < spec.n_opt; ++i, ++slot) {
            const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(i);
            if (const auto it = done.find({n, seed}); it != done.end()) {
                records[slot] = it->second;
            } else {
                tasks.push_back({n, seed, slot});
            }
        }
    }

    std::ofstream out;
    std::mutex out_mutex;
    if (!spec.record_path.empty() && !tasks.empty()) {
        out.open(spec.record_path, std::ios::app);
        if (!out) throw std::runtime_error("sweep: cannot open record file " + spec.record_path);
    }

    parallel_for(tasks.size(), spec.parallel_trials, [&](std::size_t t) {
        const Task& task = tasks[t];
        TrialConfig config = spec.base;
        config.n = task.n;
        const TrialRecord record = run_trial(config, task.seed);
        records[task.slot] = record;
        if (out.is_open()) {
            const std::string line = to_json_line(record);
            std::lock_guard<std::mutex> lock(out_mutex);
            out << line << '\n' << std::flush;
        }
    });

    SweepResult result;
    result.records = std::move(records);
    for (std::size_t point = 0; point < spec.n_range.size(); ++point) {
        const std::span<const TrialRecord> cell(result.records.data() + point * spec.n_opt,
                                                static_cast<std::size_t>(spec.n_opt));
        result.summaries.push_back(success_rate(cell, spec.base.success_threshold,
                                                optimizer_name(spec.base.optimizer)));
    }

    if (!spec.summary_path.empty()) {
        std::ofstream csv(spec.summary_path);
        if (!csv) throw std::runtime_error("sweep: cannot open summary file " + spec.summary_path);
        write_summary_csv(csv, result.summaries);
    }
    return result;
}

void write_summary_csv(std::ostream& out, std::span<const SuccessRateSummary> summaries) {
    out << "n,layers,optimizer,n_opt,success_count,success_rate,ci95\n";
    for (const SuccessRateSummary& s : summaries) {
        char line[160];
        std::snprintf(line, sizeof(line), "%d,%d,%s,%d,%d,%.6g,%.6g\n", s.n, s.layers,
                      s.optimizer.c_str(), s.n_opt, s.success_count, s.success_rate, s.ci95);
        out << line;
    }
}

std::vector<double> landscape_scan(const Ansatz& ansatz, const IsingChain& chain, int index_i,
                                   int index_j, const LandscapeGrid& grid, std::uint64_t seed) {
    const int dimension = parameter_count(ansatz);
    if (index_i < 0 || index_i >= dimension || index_j < 0 || index_j >= dimension) {
        throw std::out_of_range("landscape_scan: parameter index out of range");
    }
    if (index_i == index_j) {
        throw std::invalid_argument("landscape_scan: free parameter indices must differ");
    }
    if (grid.resolution < 2) throw std::invalid_argument("landscape_scan: resolution must be >= 2");

    const Objective objective = make_energy_objective(ansatz, chain);
    Rng rng(seed);
    std::vector<double> params(dimension);
    for (double& v : params) v = rng.uniform(-std::numbers::pi, std::numbers::pi);

    const int res = grid.resolution;
    const double step = (grid.range.hi - grid.range.lo) / (res - 1);
    std::vector<double> energies(static_cast<std::size_t>(res) * res);
    for (int r = 0; r < res; ++r) {
        params[index_i] = grid.range.lo + step * r;
        for (int c = 0; c < res; ++c) {
            params[index_j] = grid.range.lo + step * c;
            energies[static_cast<std::size_t>(r) * res + c] = objective(params);
        }
    }
    return energies;
}

void write_landscape_csv(std::ostream& out, std::span<const double> energies,
                         const LandscapeGrid& grid) {
    const int res = grid.resolution;
    if (static_cast<std::size_t>(res) * res != energies.size()) {
        throw std::invalid_argument("write_landscape_csv: grid size mismatch");
    }
    const double step = (grid.range.hi - grid.range.lo) / (res - 1);
    out << "theta_i,theta_j,energy\n";
    for (int r = 0; r < res; ++r) {
        for (int c = 0; c < res; ++c) {
            char line[96];
            std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g\n", grid.range.lo + step * r,
                          grid.range.lo + step * c, energies[static_cast<std::size_t>(r) * res + c]);
            out << line;
        }
    }
}

}  // namespace devqe
