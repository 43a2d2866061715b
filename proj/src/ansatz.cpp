#include "devqe/ansatz.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace devqe {

namespace {

void check_ansatz(const Ansatz& ansatz) {
    if (ansatz.n_qubits < 1) {
        throw std::invalid_argument("ansatz needs n_qubits >= 1");
    }
    if (ansatz.n_layers < 0) {
        throw std::invalid_argument("ansatz needs n_layers >= 0");
    }
}

// Ry(pi/4) on every qubit of |0...0> is a product state whose amplitude
// depends only on the index popcount; one pass replaces n gate passes.
void set_initial_ry_row(StateVector& state) {
    const int n = state.n_qubits;
    const double c = std::cos(std::numbers::pi / 8.0);
    const double s = std::sin(std::numbers::pi / 8.0);
    std::vector<double> by_popcount(n + 1);
    for (int k = 0; k <= n; ++k) {
        by_popcount[k] = std::pow(c, n - k) * std::pow(s, k);
    }
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        state.amplitudes[i] = complex_t{by_popcount[std::popcount(i)], 0.0};
    }
}

// The whole CZ ladder (0,1)(1,2)...(n-2,n-1) is diagonal: the sign of
// amplitude i flips once per adjacent 1-1 bit pair, so one parity pass
// replaces n-1 gate passes. Adjacent qubits sit in adjacent index bits.
void apply_cz_ladder(StateVector& state) {
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if (std::popcount(i & (i >> 1)) & 1) state.amplitudes[i] = -state.amplitudes[i];
    }
}

}  // namespace

int parameter_count(const Ansatz& ansatz) {
    check_ansatz(ansatz);
    return 2 * ansatz.n_qubits * (ansatz.n_layers + 1);
}

StateVector prepare_state(const Ansatz& ansatz, std::span<const double> params) {
    const int expected = parameter_count(ansatz);
    if (static_cast<int>(params.size()) != expected) {
        throw std::invalid_argument("prepare_state: expected " + std::to_string(expected) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    const int n = ansatz.n_qubits;
    StateVector state = zero_state(n);
    if (ansatz.include_initial_ry) set_initial_ry_row(state);
    for (int block = 0; block <= ansatz.n_layers; ++block) {
        const int base = 2 * n * block;
        for (int q = 0; q < n; ++q) {
            apply_gate_inplace(state, Gate::ry(q, params[base + q]));
        }
        for (int q = 0; q < n; ++q) {
            apply_gate_inplace(state, Gate::rz(q, params[base + n + q]));
        }
        if (block < ansatz.n_layers) apply_cz_ladder(state);
    }
    return state;
}

double energy(const Ansatz& ansatz, const IsingChain& chain, std::span<const double> params) {
    if (ansatz.n_qubits != chain.n_sites) {
        throw std::invalid_argument("ansatz has " + std::to_string(ansatz.n_qubits) +
                                    " qubits but chain has " + std::to_string(chain.n_sites) +
                                    " sites");
    }
    const std::vector<PauliString> terms = build_hamiltonian(chain);
    return expectation(prepare_state(ansatz, params), terms);
}

}  // namespace devqe
