#include "devqe/spsa.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "devqe/rng.hpp"

namespace devqe {

OptResult spsa_minimize(const Objective& objective, std::span<const double> x0,
                        const SpsaConfig& config) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("spsa: empty start point");
    if (config.max_iterations < 1) throw std::invalid_argument("spsa: max_iterations must be >= 1");
    for (double v : x0) {
        if (!std::isfinite(v)) throw std::invalid_argument("spsa: x0 must be finite");
    }

    Rng rng(config.seed);
    const double big_a =
        config.stability >= 0.0 ? config.stability : 0.1 * config.max_iterations;

    long long evaluations = 0;
    std::vector<double> best_x(x0.begin(), x0.end());
    double best_f = std::numeric_limits<double>::infinity();
    auto evaluate = [&](std::span<const double> x) {
        const double f = objective(x);
        ++evaluations;
        if (f < best_f) {
            best_f = f;
            best_x.assign(x.begin(), x.end());
        }
        return f;
    };

    std::vector<double> x(x0.begin(), x0.end());
    std::vector<int> delta(n);
    std::vector<double> probe(n);

    auto perturb = [&](std::span<const double> center, double step, int direction) {
        for (std::size_t i = 0; i < n; ++i) probe[i] = center[i] + direction * step * delta[i];
        return evaluate(probe);
    };

    // Gain calibration: estimate the typical |df / (2c)| magnitude and set
    // `a` so the very first update moves each component by ~target_step.
    double gain_a = config.a;
    if (gain_a <= 0.0) {
        double magnitude = 0.0;
        for (int s = 0; s < config.calibration_samples; ++s) {
            for (std::size_t i = 0; i < n; ++i) delta[i] = rng.rademacher();
            const double f_plus = perturb(x, config.c, +1);
            const double f_minus = perturb(x, config.c, -1);
            magnitude += std::abs(f_plus - f_minus) / (2.0 * config.c);
        }
        magnitude /= std::max(1, config.calibration_samples);
        if (magnitude < 1e-12) magnitude = 1.0;  // flat probe; assume unit gradient
        gain_a = config.target_step / magnitude * std::pow(big_a + 1.0, config.alpha);
    }

    OptResult result;
    for (int k = 0; k < config.max_iterations; ++k) {
        const double a_k = gain_a / std::pow(big_a + k + 1.0, config.alpha);
        const double c_k = config.c / std::pow(k + 1.0, config.gamma);
        for (std::size_t i = 0; i < n; ++i) delta[i] = rng.rademacher();
        const double f_plus = perturb(x, c_k, +1);
        const double f_minus = perturb(x, c_k, -1);
        const double slope = (f_plus - f_minus) / (2.0 * c_k);
        for (std::size_t i = 0; i < n; ++i) x[i] -= a_k * slope * delta[i];
        if (config.record_trace) result.trace.emplace_back(k + 1, best_f);
    }

    result.best_params = std::move(best_x);
    result.best_energy = best_f;
    result.iterations = config.max_iterations;
    result.evaluations = evaluations;
    result.converged = true;  // completed its fixed schedule
    return result;
}

}  // namespace devqe
