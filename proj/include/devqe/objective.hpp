#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "devqe/ansatz.hpp"

namespace devqe {

// Deterministic objective: the same parameter vector always yields the
// same value, and evaluate must be safe to call from several threads.
struct Objective {
    std::function<double(std::span<const double>)> evaluate;
    int dimension = 0;

    double operator()(std::span<const double> x) const { return evaluate(x); }
};

using GradientFn = std::function<std::vector<double>(std::span<const double>)>;

// Outcome shared by every optimizer.
struct OptResult {
    std::vector<double> best_params;
    double best_energy = 0.0;
    int iterations = 0;
    long long evaluations = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> trace;  // (iteration, best energy)
};

// E(theta) with the Hamiltonian terms built once and captured.
Objective make_energy_objective(const Ansatz& ansatz, const IsingChain& chain);

// Component k = [E(theta + pi/2 e_k) - E(theta - pi/2 e_k)] / 2.
// Exact for circuits whose every parameterized gate is a Pauli rotation;
// costs 2 * dimension evaluations.
std::vector<double> parameter_shift_gradient(const Objective& objective,
                                             std::span<const double> params);

// Adapts parameter_shift_gradient to the GradientFn signature.
GradientFn make_parameter_shift_gradient(const Objective& objective);

}  // namespace devqe
