#pragma once

#include <cstdint>
#include <span>

#include "devqe/objective.hpp"

namespace devqe {

// Spall's simultaneous perturbation stochastic approximation with the
// standard power-law gain schedules
//   a_k = a / (A + k + 1)^alpha,   c_k = c / (k + 1)^gamma
// and Rademacher perturbations. Runs a fixed number of iterations at two
// objective evaluations each.
struct SpsaConfig {
    int max_iterations = 0;  // must be set; the bench resolves 0 to 300 (L+1) n
    double alpha = 0.602;
    double gamma = 0.101;
    double a = 0.0;            // 0 -> calibrated from target_step
    double c = 0.1;
    double stability = -1.0;   // A; negative -> 0.1 * max_iterations
    double target_step = 0.1;  // first-step magnitude the calibration aims for
    int calibration_samples = 25;
    std::uint64_t seed = 0;
    bool record_trace = false;
};

// Returns the best point among all evaluated ones (calibration probes and
// the two perturbed points per iteration), so evaluations stay exactly
// 2 * iterations + 2 * calibration_samples.
OptResult spsa_minimize(const Objective& objective, std::span<const double> x0,
                        const SpsaConfig& config);

}  // namespace devqe
