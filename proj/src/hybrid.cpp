#include "devqe/hybrid.hpp"

namespace devqe {

OptResult hybrid_minimize(const Objective& objective, const GradientFn& gradient,
                          const DEConfig& de_config, const LbfgsConfig& lbfgs_config) {
    const OptResult global = de_minimize(objective, de_config);
    OptResult polished = lbfgs_minimize(objective, gradient, global.best_params, lbfgs_config);

    // L-BFGS starts at the DE optimum and only accepts decreases, but keep
    // the better of the two in case the polish could not move at all.
    if (global.best_energy < polished.best_energy) {
        polished.best_params = global.best_params;
        polished.best_energy = global.best_energy;
    }
    polished.iterations += global.iterations;
    polished.evaluations += global.evaluations;

    if (!global.trace.empty() || !polished.trace.empty()) {
        std::vector<std::pair<int, double>> trace = global.trace;
        for (const auto& [iteration, value] : polished.trace) {
            trace.emplace_back(global.iterations + iteration, value);
        }
        polished.trace = std::move(trace);
    }
    return polished;
}

}  // namespace devqe
