#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace devqe {

using complex_t = std::complex<double>;

// Largest register the library will allocate (2^26 amplitudes ~ 1 GiB).
inline constexpr int kMaxQubits = 26;

// Dense n-qubit state. Qubit 0 is the most significant bit of the
// amplitude index: |q0 q1 ... q_{n-1}> lives at index
// sum_q bit(q) << (n-1-q), matching the left-to-right tensor order of
// the Hamiltonian terms.
struct StateVector {
    int n_qubits = 0;
    std::vector<complex_t> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

enum class GateKind { Ry, Rz, Cz };

struct Gate {
    GateKind kind = GateKind::Ry;
    int target = 0;
    int control = -1;    // CZ only
    double angle = 0.0;  // Ry/Rz only

    static Gate ry(int target, double angle) { return {GateKind::Ry, target, -1, angle}; }
    static Gate rz(int target, double angle) { return {GateKind::Rz, target, -1, angle}; }
    static Gate cz(int control, int target) { return {GateKind::Cz, target, control, 0.0}; }
};

// Ry/Rz invert by negating the angle; CZ is an involution.
Gate inverse(const Gate& gate);

StateVector zero_state(int n_qubits);

void apply_gate_inplace(StateVector& state, const Gate& gate);
StateVector apply_gate(StateVector state, const Gate& gate);

// <a|b>, conjugate-linear in a.
complex_t inner_product(const StateVector& a, const StateVector& b);

double squared_norm(const StateVector& state);

}  // namespace devqe
