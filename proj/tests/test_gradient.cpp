#include <doctest.h>

#include <cmath>
#include <numbers>

#include "devqe/objective.hpp"
#include "devqe/rng.hpp"

using namespace devqe;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> central_difference(const Objective& objective,
                                       std::span<const double> params, double h) {
    std::vector<double> point(params.begin(), params.end());
    std::vector<double> grad(point.size());
    for (std::size_t k = 0; k < point.size(); ++k) {
        const double original = point[k];
        point[k] = original + h;
        const double plus = objective(point);
        point[k] = original - h;
        const double minus = objective(point);
        point[k] = original;
        grad[k] = (plus - minus) / (2 * h);
    }
    return grad;
}

}  // namespace

TEST_CASE("parameter shift on a single-qubit cosine objective") {
    // <0| Ry(t)^dag Z Ry(t) |0> = cos t.
    Objective objective;
    objective.dimension = 1;
    objective.evaluate = [](std::span<const double> x) {
        StateVector s = apply_gate(zero_state(1), Gate::ry(0, x[0]));
        const PauliString z = PauliString::parse(1.0, "Z");
        return expectation(s, std::span<const PauliString>(&z, 1));
    };

    Rng rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        const std::vector<double> theta = {rng.uniform(-pi, pi)};
        CHECK(objective(theta) == doctest::Approx(std::cos(theta[0])).epsilon(1e-12));
        const auto grad = parameter_shift_gradient(objective, theta);
        CHECK(std::abs(grad[0] - (-std::sin(theta[0]))) < 1e-10);
    }
}

TEST_CASE("gradient vanishes at the analytic minimum") {
    const int n = 4;
    const Objective objective =
        make_energy_objective(Ansatz{n, 0, true}, IsingChain{n, 1.0, PauliOp::Y});
    std::vector<double> ground(2 * n, 0.0);
    for (int q = 0; q < n; ++q) {
        ground[q] = pi / 4;
        ground[n + q] = pi / 2;
    }
    const auto grad = parameter_shift_gradient(objective, ground);
    for (double g : grad) CHECK(std::abs(g) < 1e-8);
}

TEST_CASE("parameter shift agrees with central finite differences") {
    Rng rng(67);
    for (const auto [n, layers] : {std::pair{3, 1}, std::pair{4, 2}}) {
        const Objective objective =
            make_energy_objective(Ansatz{n, layers, true}, IsingChain{n, 1.0, PauliOp::Y});
        std::vector<double> params(objective.dimension);
        for (int rep = 0; rep < 5; ++rep) {
            for (double& p : params) p = rng.uniform(-pi, pi);
            const auto shift = parameter_shift_gradient(objective, params);
            const auto fd = central_difference(objective, params, 1e-6);
            for (std::size_t k = 0; k < params.size(); ++k) {
                CHECK(std::abs(shift[k] - fd[k]) < 1e-5);
            }
        }
    }
}
