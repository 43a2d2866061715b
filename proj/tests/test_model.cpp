#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "dense_oracle.hpp"
#include "devqe/ansatz.hpp"
#include "devqe/ising.hpp"
#include "devqe/rng.hpp"

using namespace devqe;

namespace {

constexpr double pi = std::numbers::pi;

// Clusters sorted eigenvalues into (energy, multiplicity) levels.
std::vector<SpectrumLevel> diagonalize(const IsingChain& chain, double cluster_tol = 1e-6) {
    const Eigen::MatrixXcd h = oracle::dense_hamiltonian(build_hamiltonian(chain));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    std::vector<SpectrumLevel> levels;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double e = solver.eigenvalues()(i);
        if (!levels.empty() && std::abs(e - levels.back().energy) < cluster_tol) {
            ++levels.back().degeneracy;
        } else {
            levels.push_back({e, 1});
        }
    }
    return levels;
}

}  // namespace

TEST_CASE("build_hamiltonian layout") {
    SUBCASE("n = 2 is a single -YY bond") {
        const auto terms = build_hamiltonian(IsingChain{2, 1.0, PauliOp::Y});
        REQUIRE(terms.size() == 1);
        CHECK(terms[0].coefficient == -1.0);
        CHECK(terms[0].letters_string() == "YY");
    }
    SUBCASE("n = 4 has the three shifted bonds") {
        const auto terms = build_hamiltonian(IsingChain{4, 1.0, PauliOp::Y});
        REQUIRE(terms.size() == 3);
        CHECK(terms[0].letters_string() == "YYII");
        CHECK(terms[1].letters_string() == "IYYI");
        CHECK(terms[2].letters_string() == "IIYY");
    }
    SUBCASE("coefficients scale with J") {
        const auto terms = build_hamiltonian(IsingChain{3, 2.0, PauliOp::Y});
        REQUIRE(terms.size() == 2);
        for (const auto& term : terms) CHECK(term.coefficient == -2.0);
    }
    SUBCASE("chain must have at least two sites") {
        CHECK_THROWS_AS(build_hamiltonian(IsingChain{1, 1.0, PauliOp::Y}),
                        std::invalid_argument);
    }
}

TEST_CASE("ground_energy is -J(n-1)") {
    CHECK(ground_energy(IsingChain{3, 1.0, PauliOp::Y}) == -2.0);
    CHECK(ground_energy(IsingChain{14, 1.0, PauliOp::Y}) == -13.0);
    CHECK(ground_energy(IsingChain{2, 1.0, PauliOp::Y}) == -1.0);
    CHECK(ground_energy(IsingChain{5, 0.5, PauliOp::Y}) == -2.0);
}

TEST_CASE("exact_spectrum closed form") {
    const auto levels = exact_spectrum(IsingChain{5, 1.0, PauliOp::Y});
    REQUIRE(levels.size() == 5);
    CHECK(levels[0].energy == -4.0);
    CHECK(levels[0].degeneracy == 2);
    CHECK(levels[1].energy == -2.0);
    CHECK(levels[1].degeneracy == 8);
    CHECK(levels[2].energy == 0.0);
    CHECK(levels[2].degeneracy == 12);

    std::int64_t total = 0;
    for (const auto& level : levels) total += level.degeneracy;
    CHECK(total == 32);
}

TEST_CASE("exact_spectrum matches dense diagonalization for n = 2..6") {
    for (int n = 2; n <= 6; ++n) {
        const IsingChain chain{n, 1.0, PauliOp::Y};
        const auto predicted = exact_spectrum(chain);
        const auto reference = diagonalize(chain);
        REQUIRE(predicted.size() == reference.size());
        std::int64_t total = 0;
        for (std::size_t k = 0; k < predicted.size(); ++k) {
            CHECK(std::abs(predicted[k].energy - reference[k].energy) < 1e-9);
            CHECK(predicted[k].degeneracy == reference[k].degeneracy);
            total += predicted[k].degeneracy;
        }
        CHECK(total == (std::int64_t{1} << n));
    }
}

TEST_CASE("parameter_count is 2n(L+1)") {
    CHECK(parameter_count(Ansatz{3, 1, true}) == 12);
    CHECK(parameter_count(Ansatz{14, 1, true}) == 56);
    CHECK(parameter_count(Ansatz{4, 0, true}) == 8);
}

TEST_CASE("prepare_state structure") {
    SUBCASE("all-zero parameters without the initial row give |0...0>") {
        for (int layers : {0, 1, 3}) {
            const Ansatz ansatz{3, layers, false};
            const std::vector<double> params(parameter_count(ansatz), 0.0);
            const StateVector s = prepare_state(ansatz, params);
            CHECK(std::abs(s.amplitudes[0] - complex_t{1, 0}) < 1e-14);
            CHECK(std::abs(squared_norm(s) - 1.0) < 1e-14);
        }
    }
    SUBCASE("initial Ry(pi/4) composes with the parameterized Ry") {
        // Ry(pi/4 + pi/4) = Ry(pi/2) maps |0> to (|0>+|1>)/sqrt(2) per qubit.
        const Ansatz ansatz{2, 0, true};
        const std::vector<double> params = {pi / 4, pi / 4, 0.0, 0.0};
        const StateVector s = prepare_state(ansatz, params);
        for (const auto& amp : s.amplitudes) {
            CHECK(std::abs(amp - complex_t{0.5, 0}) < 1e-12);
        }
    }
    SUBCASE("random circuit matches the dense-matrix product") {
        Rng rng(41);
        const Ansatz ansatz{3, 1, true};
        std::vector<double> params(parameter_count(ansatz));
        for (int rep = 0; rep < 5; ++rep) {
            for (double& p : params) p = rng.uniform(-pi, pi);
            const StateVector s = prepare_state(ansatz, params);
            const Eigen::VectorXcd expected = oracle::circuit_state(ansatz, params);
            for (std::size_t i = 0; i < s.dim(); ++i) {
                CHECK(std::abs(s.amplitudes[i] - expected(static_cast<Eigen::Index>(i))) < 1e-12);
            }
        }
    }
    SUBCASE("parameter count is validated") {
        CHECK_THROWS_AS(prepare_state(Ansatz{3, 1, true}, std::vector<double>(5)),
                        std::invalid_argument);
    }
}

TEST_CASE("energy against spectrum bounds and the dense oracle") {
    const IsingChain chain{4, 1.0, PauliOp::Y};
    const Ansatz ansatz{4, 1, true};
    Rng rng(43);
    std::vector<double> params(parameter_count(ansatz));

    SUBCASE("values stay inside [-(n-1), n-1]") {
        for (int rep = 0; rep < 100; ++rep) {
            for (double& p : params) p = rng.uniform(-pi, pi);
            const double e = energy(ansatz, chain, params);
            CHECK(e >= -3.0 - 1e-12);
            CHECK(e <= 3.0 + 1e-12);
        }
    }
    SUBCASE("explicit |i>^n parameters reach the ground energy") {
        // Rz(pi/2) Ry(pi/2) |0> = |i> up to global phase; the initial
        // Ry(pi/4) row supplies half of the Ry angle.
        for (int n : {2, 3, 5}) {
            const Ansatz flat{n, 0, true};
            std::vector<double> ground(parameter_count(flat));
            for (int q = 0; q < n; ++q) {
                ground[q] = pi / 4;
                ground[n + q] = pi / 2;
            }
            const double e = energy(flat, IsingChain{n, 1.0, PauliOp::Y}, ground);
            CHECK(e == doctest::Approx(-(n - 1.0)).epsilon(1e-12));
        }
    }
    SUBCASE("matches the dense oracle at n = 3") {
        const IsingChain small{3, 1.0, PauliOp::Y};
        const Ansatz circuit{3, 1, true};
        const Eigen::MatrixXcd h = oracle::dense_hamiltonian(build_hamiltonian(small));
        std::vector<double> theta(parameter_count(circuit));
        for (int rep = 0; rep < 10; ++rep) {
            for (double& p : theta) p = rng.uniform(-pi, pi);
            const Eigen::VectorXcd v = oracle::circuit_state(circuit, theta);
            const double reference = (v.adjoint() * h * v)(0).real();
            CHECK(std::abs(energy(circuit, small, theta) - reference) < 1e-10);
        }
    }
    SUBCASE("mismatched qubit counts are rejected") {
        CHECK_THROWS_AS(energy(Ansatz{3, 1, true}, chain, params), std::invalid_argument);
    }
}

TEST_CASE("energy respects the variational bound over many random points") {
    const IsingChain chain{4, 1.0, PauliOp::Y};
    const Ansatz ansatz{4, 1, true};
    const double e0 = ground_energy(chain);
    Rng rng(47);
    std::vector<double> params(parameter_count(ansatz));
    double lowest = 0.0;
    for (int rep = 0; rep < 10000; ++rep) {
        for (double& p : params) p = rng.uniform(-pi, pi);
        lowest = std::min(lowest, energy(ansatz, chain, params));
    }
    CHECK(lowest >= e0 - 1e-9);
}

TEST_CASE("energy is 2pi-periodic in every parameter") {
    const IsingChain chain{3, 1.0, PauliOp::Y};
    const Ansatz ansatz{3, 1, true};
    Rng rng(53);
    std::vector<double> params(parameter_count(ansatz));
    for (double& p : params) p = rng.uniform(-pi, pi);
    const double base = energy(ansatz, chain, params);
    for (std::size_t k = 0; k < params.size(); ++k) {
        std::vector<double> shifted = params;
        shifted[k] += 2 * pi;
        CHECK(std::abs(energy(ansatz, chain, shifted) - base) < 1e-10);
    }
}
