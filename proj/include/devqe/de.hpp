#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "devqe/halton.hpp"
#include "devqe/objective.hpp"
#include "devqe/rng.hpp"

namespace devqe {

enum class CrossoverKind { Binomial, Exponential };
enum class DEInit { Halton, Uniform, Given };

// best/1 is the only implemented scheme; the enum is the extension hook.
enum class MutationStrategy { Best1 };

struct DEConfig {
    int population_multiplier = 1;  // P = multiplier * dimension
    double mutation_min = 0.5;      // F ~ U[min, max) redrawn each generation;
    double mutation_max = 1.0;      // min == max fixes F
    double crossover_rate = 0.7;    // C
    CrossoverKind crossover = CrossoverKind::Binomial;
    MutationStrategy strategy = MutationStrategy::Best1;
    DEInit init = DEInit::Halton;
    std::vector<Bounds> bounds;     // empty -> [-pi, pi] per parameter
    std::vector<std::vector<double>> initial_population;  // DEInit::Given
    int max_iterations = 25000;
    double abs_tol = 0.0;   // t
    double rel_tol = 1e-5;  // t'
    std::uint64_t seed = 0;
    int jobs = 1;  // parallel trial evaluations inside a generation
    bool record_trace = false;
};

struct DEState {
    std::vector<std::vector<double>> population;
    std::vector<double> energies;
    std::size_t best_index = 0;
    int generation = 0;
    long long evaluations = 0;
    Rng rng{0};
};

// Per-parameter intervals actually in force (config.bounds or the
// [-pi, pi] default).
std::vector<Bounds> effective_bounds(const DEConfig& config, int dimension);

// x_best + f (x_r1 - x_r2) with r1, r2 distinct random indices different
// from both best_index and target_index. Out-of-bound components are
// resampled uniformly inside their interval.
std::vector<double> de_mutate(DEState& state, std::size_t target_index, double f,
                              std::span<const Bounds> bounds);

// Each component comes from the mutant with probability crossover_rate;
// one randomly chosen component is always taken from the mutant.
std::vector<double> de_crossover_binomial(std::span<const double> target,
                                          std::span<const double> mutant,
                                          double crossover_rate, Rng& rng);

// Replaces one contiguous circular segment: starting at a random index,
// components are copied from the mutant while successive uniform draws
// stay below crossover_rate, always copying at least one.
std::vector<double> de_crossover_exponential(std::span<const double> target,
                                             std::span<const double> mutant,
                                             double crossover_rate, Rng& rng);

// Population standard deviation (divisor P) against t + t' |mean|.
bool de_converged(std::span<const double> energies, double abs_tol, double rel_tol);

// Seeds the population per config.init and evaluates every member.
DEState de_init(const Objective& objective, const DEConfig& config);

// One generation: trial vectors for all members are drawn first (all
// randomness on the calling thread), evaluated possibly in parallel, and
// accepted member-by-member on strict improvement. best_index is
// recomputed after the whole generation, so results do not depend on
// config.jobs.
void de_step(DEState& state, const Objective& objective, const DEConfig& config);

OptResult de_minimize(const Objective& objective, const DEConfig& config);

}  // namespace devqe
