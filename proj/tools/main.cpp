// devqe: VQE ground-state search on the zero-field Ising chain with
// differential-evolution, SPSA, L-BFGS and hybrid optimizers.
//
// Subcommands: run, sweep, spectrum, landscape. Exit codes: 0 success,
// 1 runtime failure (or an unsuccessful run), 2 invalid configuration.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "config.hpp"
#include "devqe/bench.hpp"

namespace {

using namespace devqe;
using cli::RunConfig;

struct CommonFlags {
    std::optional<std::string> n_list;
    std::optional<int> layers;
    std::optional<std::string> optimizer;
    std::optional<std::string> crossover;
    std::optional<int> pop_mult;
    std::optional<int> maxiter;
    std::optional<int> n_opt;
    std::optional<std::uint64_t> seed;
    std::optional<double> threshold;
    std::optional<std::string> out;
    std::optional<std::string> config_path;
    std::optional<int> jobs;
    bool print_config = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--n", flags.n_list,
                    "chain length; sweep accepts lists like '3,5,7' or '3-8'");
    cmd->add_option("--layers", flags.layers, "ansatz layers L");
    cmd->add_option("--optimizer", flags.optimizer, "de, spsa, lbfgs or hybrid");
    cmd->add_option("--crossover", flags.crossover, "DE recombination: bin or exp");
    cmd->add_option("--pop-mult", flags.pop_mult, "DE population multiplier p (P = p N_theta)");
    cmd->add_option("--maxiter", flags.maxiter, "iteration budget of the selected optimizer");
    cmd->add_option("--n-opt", flags.n_opt, "trials per sweep point");
    cmd->add_option("--seed", flags.seed, "trial seed (run/landscape) or base seed (sweep)");
    cmd->add_option("--threshold", flags.threshold, "success threshold on delta");
    cmd->add_option("--out", flags.out, "output path");
    cmd->add_option("--config", flags.config_path, "JSON configuration file");
    cmd->add_option("--jobs", flags.jobs, "worker threads")->envname("VQE_DE_JOBS");
    cmd->add_flag("--print-config", flags.print_config,
                  "print the effective configuration and exit");
}

// defaults -> config file -> flags.
RunConfig resolve_config(const CommonFlags& flags, bool n_list_is_sweep) {
    RunConfig config;
    if (flags.config_path) config = cli::load_config_file(*flags.config_path);
    if (flags.n_list) {
        const std::vector<int> values = cli::parse_n_list(*flags.n_list);
        if (n_list_is_sweep) {
            config.sweep.n_range = values;
        } else if (values.size() == 1) {
            config.n = values.front();
        } else {
            throw std::invalid_argument("this command takes a single --n value");
        }
    }
    if (flags.layers) config.layers = *flags.layers;
    if (flags.optimizer) config.optimizer = *flags.optimizer;
    if (flags.crossover) config.de.crossover = *flags.crossover;
    if (flags.pop_mult) config.de.pop_mult = *flags.pop_mult;
    if (flags.maxiter) {
        if (config.optimizer == "spsa") {
            config.spsa.maxiter = *flags.maxiter;
        } else if (config.optimizer == "lbfgs") {
            config.lbfgs.maxiter = *flags.maxiter;
        } else {
            config.de.maxiter = *flags.maxiter;  // de and the hybrid global phase
        }
    }
    if (flags.n_opt) config.sweep.n_opt = *flags.n_opt;
    if (flags.seed) {
        config.seed = *flags.seed;
        config.sweep.base_seed = *flags.seed;
    }
    if (flags.threshold) config.threshold = *flags.threshold;
    if (flags.jobs) config.jobs = *flags.jobs;
    return config;
}

bool maybe_print_config(const CommonFlags& flags, const RunConfig& config) {
    if (!flags.print_config) return false;
    std::cout << cli::config_to_json(config).dump(2) << '\n';
    return true;
}

int cmd_run(const CommonFlags& flags) {
    const RunConfig config = resolve_config(flags, false);
    const TrialConfig trial = cli::make_trial_config(config);
    if (maybe_print_config(flags, config)) return 0;

    const TrialRecord record = run_trial(trial, config.seed);
    const std::string line = to_json_line(record);
    std::cout << line << '\n';
    if (flags.out) {
        std::ofstream out(*flags.out, std::ios::app);
        if (!out) {
            std::cerr << "devqe: cannot open " << *flags.out << '\n';
            return 1;
        }
        out << line << '\n';
    }
    return record.converged && record.delta <= trial.success_threshold ? 0 : 1;
}

int cmd_sweep(const CommonFlags& flags) {
    RunConfig config = resolve_config(flags, true);
    if (flags.out) {
        config.sweep.records = *flags.out;
        config.sweep.summary.clear();  // rederive next to the records
    }
    const ExperimentSpec spec = cli::make_experiment_spec(config);
    if (maybe_print_config(flags, config)) return 0;

    const SweepResult result = sweep(spec);
    write_summary_csv(std::cout, result.summaries);
    return 0;
}

int cmd_spectrum(const CommonFlags& flags) {
    const RunConfig config = resolve_config(flags, false);
    if (config.n < 2) throw std::invalid_argument("n must be >= 2");
    if (maybe_print_config(flags, config)) return 0;

    const IsingChain chain{config.n, config.coupling,
                           config.axis == "X"   ? PauliOp::X
                           : config.axis == "Z" ? PauliOp::Z
                                                : PauliOp::Y};
    std::printf("energy degeneracy\n");
    for (const SpectrumLevel& level : exact_spectrum(chain)) {
        std::printf("%g %lld\n", level.energy, static_cast<long long>(level.degeneracy));
    }
    return 0;
}

int cmd_landscape(const CommonFlags& flags, const std::optional<int>& index_i,
                  const std::optional<int>& index_j, const std::optional<int>& resolution) {
    RunConfig config = resolve_config(flags, false);
    if (index_i) config.landscape.index_i = *index_i;
    if (index_j) config.landscape.index_j = *index_j;
    if (resolution) config.landscape.resolution = *resolution;
    if (flags.out) config.landscape.out = *flags.out;
    const TrialConfig trial = cli::make_trial_config(config);  // validates n, layers, axis
    if (maybe_print_config(flags, config)) return 0;

    const Ansatz ansatz{trial.n, trial.layers, trial.include_initial_ry};
    const IsingChain chain{trial.n, trial.coupling, trial.axis};
    LandscapeGrid grid;
    grid.resolution = config.landscape.resolution;
    grid.range = Bounds{config.landscape.lo, config.landscape.hi};

    const std::vector<double> energies = landscape_scan(
        ansatz, chain, config.landscape.index_i, config.landscape.index_j, grid, config.seed);
    std::ofstream out(config.landscape.out);
    if (!out) {
        std::cerr << "devqe: cannot open " << config.landscape.out << '\n';
        return 1;
    }
    write_landscape_csv(out, energies, grid);
    std::cout << "wrote " << config.landscape.out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VQE benchmark harness for the 1D zero-field Ising chain"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags, spectrum_flags, landscape_flags;
    CLI::App* run = app.add_subcommand("run", "one seeded optimization, record on stdout");
    add_common_flags(run, run_flags);
    CLI::App* swp = app.add_subcommand("sweep", "seeded trial batches over chain lengths");
    add_common_flags(swp, sweep_flags);
    CLI::App* spec = app.add_subcommand("spectrum", "exact energy levels and degeneracies");
    add_common_flags(spec, spectrum_flags);
    CLI::App* land = app.add_subcommand("landscape", "2-parameter energy scan to CSV");
    add_common_flags(land, landscape_flags);
    std::optional<int> index_i, index_j, resolution;
    land->add_option("--index-i", index_i, "first free parameter index");
    land->add_option("--index-j", index_j, "second free parameter index");
    land->add_option("--resolution", resolution, "grid points per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_flags);
        if (swp->parsed()) return cmd_sweep(sweep_flags);
        if (spec->parsed()) return cmd_spectrum(spectrum_flags);
        if (land->parsed()) return cmd_landscape(landscape_flags, index_i, index_j, resolution);
    } catch (const std::invalid_argument& e) {
        std::cerr << "devqe: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "devqe: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "devqe: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
