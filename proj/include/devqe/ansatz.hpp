#pragma once

#include <span>

#include "devqe/ising.hpp"
#include "devqe/statevector.hpp"

namespace devqe {

// Hardware-efficient circuit: an optional Ry(pi/4) on every qubit, then
// n_layers blocks of [Ry row, Rz row, CZ ladder on (0,1)..(n-2,n-1)],
// then a final parameterized Ry/Rz row without a ladder.
//
// Parameters are laid out block-major; inside a block the Ry angles for
// qubits 0..n-1 come first, then the Rz angles.
struct Ansatz {
    int n_qubits = 2;
    int n_layers = 1;                // L >= 0
    bool include_initial_ry = true;  // the fixed Ry(pi/4) row
};

// 2 n (L+1)
int parameter_count(const Ansatz& ansatz);

StateVector prepare_state(const Ansatz& ansatz, std::span<const double> params);

// <psi(theta)| H |psi(theta)> for the chain's Hamiltonian.
double energy(const Ansatz& ansatz, const IsingChain& chain, std::span<const double> params);

}  // namespace devqe
