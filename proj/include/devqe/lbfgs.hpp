#pragma once

#include <span>

#include "devqe/objective.hpp"

namespace devqe {

// Unconstrained limited-memory BFGS: two-loop recursion over the last
// `memory` curvature pairs, strong-Wolfe line search. Each evaluation is
// one combined (value, gradient) query.
struct LbfgsConfig {
    int memory = 10;
    double armijo_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    double g_tol = 1e-10;  // max-norm gradient stop
    double f_tol = 1e-15;  // relative objective decrease stop
    int max_iterations = 10000;
    long long max_evaluations = 0;  // 0 -> 1000 * dimension
    int max_linesearch = 60;
    bool record_trace = false;
};

// Returns the best point seen. converged is true only when the gradient
// or relative-decrease criterion fired; budget exhaustion and line-search
// failure leave it false.
OptResult lbfgs_minimize(const Objective& objective, const GradientFn& gradient,
                         std::span<const double> x0, const LbfgsConfig& config);

}  // namespace devqe
