#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "devqe/ansatz.hpp"
#include "devqe/de.hpp"
#include "devqe/hybrid.hpp"
#include "devqe/lbfgs.hpp"
#include "devqe/spsa.hpp"

namespace devqe {

enum class OptimizerKind { De, Spsa, Lbfgs, Hybrid };

std::string optimizer_name(OptimizerKind kind);
OptimizerKind optimizer_from_name(const std::string& name);

// Everything needed to run one optimization at a single (n, L) point.
// Budget fields left at 0 are resolved per point: SPSA iterations become
// 300 (L+1) n and the L-BFGS evaluation cap 1000 N_theta.
struct TrialConfig {
    int n = 3;
    int layers = 1;
    double coupling = 1.0;
    PauliOp axis = PauliOp::Y;
    bool include_initial_ry = true;
    OptimizerKind optimizer = OptimizerKind::De;
    DEConfig de;       // De runs and the Hybrid global phase
    SpsaConfig spsa;   // spsa.max_iterations == 0 -> auto budget
    LbfgsConfig lbfgs;
    double success_threshold = 1e-2;  // delta*
    int jobs = 1;                     // DE population evaluation threads
};

struct TrialRecord {
    int n = 0;
    int layers = 0;
    std::uint64_t seed = 0;
    double final_energy = 0.0;
    double delta = 0.0;  // 1 - |E / E0|
    long long iterations = 0;
    long long evaluations = 0;
    bool converged = false;
    double wall_time = 0.0;  // seconds
    int nearest_level = 0;   // index into exact_spectrum
};

// Runs one seeded optimization. Local optimizers start from a seeded
// uniform [-pi, pi) vector; DE draws its own population from the seed.
// Optimizer exceptions are recorded (converged = false, NaN energy)
// rather than propagated.
TrialRecord run_trial(const TrialConfig& config, std::uint64_t seed);

struct SuccessRateSummary {
    int n = 0;
    int layers = 0;
    std::string optimizer;
    int n_opt = 0;
    int success_count = 0;
    double success_rate = 0.0;
    double ci95 = 0.0;  // Wilson 95% interval half-width
};

// Counts records with delta <= threshold. Records must be non-empty and
// homogeneous in (n, layers).
SuccessRateSummary success_rate(std::span<const TrialRecord> records, double threshold,
                                const std::string& optimizer_label);

struct ExperimentSpec {
    std::vector<int> n_range;
    TrialConfig base;  // base.n is overwritten per point
    int n_opt = 20;
    std::uint64_t base_seed = 0;
    int parallel_trials = 1;
    std::string record_path;   // JSONL stream; empty -> memory only
    std::string summary_path;  // CSV; empty -> no file
};

struct SweepResult {
    std::vector<TrialRecord> records;  // ordered by (n_range position, seed)
    std::vector<SuccessRateSummary> summaries;
};

// Runs n_opt trials per chain length with seeds base_seed + i. Completed
// records are appended to record_path as they finish; rerunning with an
// existing file completes only the missing (n, seed) pairs.
SweepResult sweep(const ExperimentSpec& spec);

std::string to_json_line(const TrialRecord& record);
TrialRecord trial_record_from_json(const std::string& line);

// Missing file yields an empty list; malformed lines raise.
std::vector<TrialRecord> read_records(const std::string& path);

void write_summary_csv(std::ostream& out, std::span<const SuccessRateSummary> summaries);

// Fig-2a-style scan: every parameter except two is frozen at a seeded
// uniform [-pi, pi) draw; the two free ones sweep an inclusive grid.
struct LandscapeGrid {
    int resolution = 101;
    Bounds range{};  // applied to both free parameters
};

std::vector<double> landscape_scan(const Ansatz& ansatz, const IsingChain& chain, int index_i,
                                   int index_j, const LandscapeGrid& grid, std::uint64_t seed);

void write_landscape_csv(std::ostream& out, std::span<const double> energies,
                         const LandscapeGrid& grid);

}  // namespace devqe
