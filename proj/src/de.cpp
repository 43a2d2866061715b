#include "devqe/de.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "devqe/parallel.hpp"

namespace devqe {

namespace {

constexpr std::uint64_t kHaltonSeedSalt = 0x9e3779b97f4a7c15ull;

void check_config(const DEConfig& config, int dimension) {
    if (dimension < 1) throw std::invalid_argument("de: objective dimension must be >= 1");
    if (config.population_multiplier < 1) {
        throw std::invalid_argument("de: population_multiplier must be >= 1");
    }
    if (config.init != DEInit::Given &&
        config.population_multiplier * dimension < 4) {
        throw std::invalid_argument("de: population must have at least 4 members");
    }
    if (config.mutation_min <= 0.0 || config.mutation_max >= 2.0 ||
        config.mutation_max < config.mutation_min) {
        throw std::invalid_argument("de: mutation factor interval must satisfy 0 < min <= max < 2");
    }
    if (config.crossover_rate < 0.0 || config.crossover_rate > 1.0) {
        throw std::invalid_argument("de: crossover_rate must be in [0, 1]");
    }
    if (config.max_iterations < 1) {
        throw std::invalid_argument("de: max_iterations must be >= 1");
    }
}

std::size_t lowest_energy_index(std::span<const double> energies) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < energies.size(); ++i) {
        if (energies[i] < energies[best]) best = i;  // ties keep the lowest index
    }
    return best;
}

void evaluate_into(const Objective& objective, const std::vector<std::vector<double>>& points,
                   std::vector<double>& energies, int jobs) {
    energies.resize(points.size());
    parallel_for(points.size(), jobs,
                 [&](std::size_t i) { energies[i] = objective(points[i]); });
}

}  // namespace

std::vector<Bounds> effective_bounds(const DEConfig& config, int dimension) {
    if (config.bounds.empty()) {
        return std::vector<Bounds>(static_cast<std::size_t>(dimension), Bounds{});
    }
    if (static_cast<int>(config.bounds.size()) != dimension) {
        throw std::invalid_argument("de: bounds size does not match objective dimension");
    }
    return config.bounds;
}

std::vector<double> de_mutate(DEState& state, std::size_t target_index, double f,
                              std::span<const Bounds> bounds) {
    const std::size_t population = state.population.size();
    if (population < 4) throw std::invalid_argument("de_mutate: population must have >= 4 members");

    auto draw_other = [&](std::size_t avoid) {
        for (;;) {
            const std::size_t r = state.rng.index(population);
            if (r != state.best_index && r != target_index && r != avoid) return r;
        }
    };
    const std::size_t r1 = draw_other(population);  // population is never a valid index
    const std::size_t r2 = draw_other(r1);

    const std::vector<double>& best = state.population[state.best_index];
    const std::vector<double>& a = state.population[r1];
    const std::vector<double>& b = state.population[r2];

    std::vector<double> mutant(best.size());
    for (std::size_t d = 0; d < mutant.size(); ++d) {
        mutant[d] = best[d] + f * (a[d] - b[d]);
        if (mutant[d] < bounds[d].lo || mutant[d] > bounds[d].hi) {
            mutant[d] = state.rng.uniform(bounds[d].lo, bounds[d].hi);
        }
    }
    return mutant;
}

std::vector<double> de_crossover_binomial(std::span<const double> target,
                                          std::span<const double> mutant,
                                          double crossover_rate, Rng& rng) {
    if (target.size() != mutant.size()) {
        throw std::invalid_argument("de_crossover_binomial: length mismatch");
    }
    const std::size_t n = target.size();
    const std::size_t forced = rng.index(n);
    std::vector<double> trial(n);
    for (std::size_t d = 0; d < n; ++d) {
        const bool take_mutant = rng.uniform01() < crossover_rate || d == forced;
        trial[d] = take_mutant ? mutant[d] : target[d];
    }
    return trial;
}

std::vector<double> de_crossover_exponential(std::span<const double> target,
                                             std::span<const double> mutant,
                                             double crossover_rate, Rng& rng) {
    if (target.size() != mutant.size()) {
        throw std::invalid_argument("de_crossover_exponential: length mismatch");
    }
    const std::size_t n = target.size();
    std::vector<double> trial(target.begin(), target.end());
    std::size_t d = rng.index(n);
    std::size_t copied = 0;
    do {
        trial[d] = mutant[d];
        d = (d + 1) % n;
        ++copied;
    } while (copied < n && rng.uniform01() < crossover_rate);
    return trial;
}

bool de_converged(std::span<const double> energies, double abs_tol, double rel_tol) {
    if (energies.empty()) throw std::invalid_argument("de_converged: empty energies");
    double mean = 0.0;
    for (double e : energies) mean += e;
    mean /= static_cast<double>(energies.size());
    double var = 0.0;
    for (double e : energies) var += (e - mean) * (e - mean);
    var /= static_cast<double>(energies.size());
    return std::sqrt(var) <= abs_tol + rel_tol * std::abs(mean);
}

DEState de_init(const Objective& objective, const DEConfig& config) {
    check_config(config, objective.dimension);
    const int dimension = objective.dimension;
    const std::vector<Bounds> bounds = effective_bounds(config, dimension);

    DEState state;
    state.rng = Rng(config.seed);
    switch (config.init) {
        case DEInit::Halton:
            state.population =
                halton_population(dimension, config.population_multiplier * dimension, bounds,
                                  config.seed ^ kHaltonSeedSalt);
            break;
        case DEInit::Uniform: {
            const int count = config.population_multiplier * dimension;
            state.population.resize(count);
            for (auto& row : state.population) {
                row.resize(dimension);
                for (int d = 0; d < dimension; ++d) {
                    row[d] = state.rng.uniform(bounds[d].lo, bounds[d].hi);
                }
            }
            break;
        }
        case DEInit::Given: {
            if (config.initial_population.size() < 4) {
                throw std::invalid_argument("de: given population must have >= 4 members");
            }
            for (const auto& row : config.initial_population) {
                if (static_cast<int>(row.size()) != dimension) {
                    throw std::invalid_argument("de: given population row has wrong dimension");
                }
                for (int d = 0; d < dimension; ++d) {
                    if (row[d] < bounds[d].lo || row[d] > bounds[d].hi) {
                        throw std::invalid_argument("de: given population exceeds the bounds");
                    }
                }
            }
            state.population = config.initial_population;
            break;
        }
    }

    evaluate_into(objective, state.population, state.energies, config.jobs);
    state.best_index = lowest_energy_index(state.energies);
    state.generation = 0;
    state.evaluations = static_cast<long long>(state.population.size());
    return state;
}

void de_step(DEState& state, const Objective& objective, const DEConfig& config) {
    const std::size_t population = state.population.size();
    const std::vector<Bounds> bounds = effective_bounds(config, objective.dimension);

    const double f = config.mutation_min == config.mutation_max
                         ? config.mutation_min
                         : state.rng.uniform(config.mutation_min, config.mutation_max);

    std::vector<std::vector<double>> trials(population);
    for (std::size_t i = 0; i < population; ++i) {
        const std::vector<double> mutant = de_mutate(state, i, f, bounds);
        trials[i] = config.crossover == CrossoverKind::Binomial
                        ? de_crossover_binomial(state.population[i], mutant,
                                                config.crossover_rate, state.rng)
                        : de_crossover_exponential(state.population[i], mutant,
                                                   config.crossover_rate, state.rng);
    }

    std::vector<double> trial_energies;
    evaluate_into(objective, trials, trial_energies, config.jobs);

    for (std::size_t i = 0; i < population; ++i) {
        if (trial_energies[i] < state.energies[i]) {
            state.population[i] = std::move(trials[i]);
            state.energies[i] = trial_energies[i];
        }
    }
    state.best_index = lowest_energy_index(state.energies);
    state.generation += 1;
    state.evaluations += static_cast<long long>(population);
}

OptResult de_minimize(const Objective& objective, const DEConfig& config) {
    DEState state = de_init(objective, config);

    OptResult result;
    if (config.record_trace) {
        result.trace.emplace_back(0, state.energies[state.best_index]);
    }

    bool converged = false;
    while (state.generation < config.max_iterations) {
        de_step(state, objective, config);
        if (config.record_trace) {
            result.trace.emplace_back(state.generation, state.energies[state.best_index]);
        }
        if (de_converged(state.energies, config.abs_tol, config.rel_tol)) {
            converged = true;
            break;
        }
    }

    result.best_params = state.population[state.best_index];
    result.best_energy = state.energies[state.best_index];
    result.iterations = state.generation;
    result.evaluations = state.evaluations;
    result.converged = converged;
    return result;
}

}  // namespace devqe
