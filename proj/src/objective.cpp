#include "devqe/objective.hpp"

#include <numbers>

namespace devqe {

Objective make_energy_objective(const Ansatz& ansatz, const IsingChain& chain) {
    const std::vector<PauliString> terms = build_hamiltonian(chain);
    Objective objective;
    objective.dimension = parameter_count(ansatz);
    objective.evaluate = [ansatz, terms](std::span<const double> params) {
        return expectation(prepare_state(ansatz, params), terms);
    };
    return objective;
}

std::vector<double> parameter_shift_gradient(const Objective& objective,
                                             std::span<const double> params) {
    constexpr double shift = std::numbers::pi / 2.0;
    std::vector<double> point(params.begin(), params.end());
    std::vector<double> grad(point.size());
    for (std::size_t k = 0; k < point.size(); ++k) {
        const double original = point[k];
        point[k] = original + shift;
        const double plus = objective(point);
        point[k] = original - shift;
        const double minus = objective(point);
        point[k] = original;
        grad[k] = (plus - minus) / 2.0;
    }
    return grad;
}

GradientFn make_parameter_shift_gradient(const Objective& objective) {
    return [objective](std::span<const double> params) {
        return parameter_shift_gradient(objective, params);
    };
}

}  // namespace devqe
