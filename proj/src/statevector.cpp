#include "devqe/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace devqe {

namespace {

// Bit position of `qubit` inside an amplitude index (qubit 0 = MSB).
inline std::uint64_t qubit_mask(int n_qubits, int qubit) {
    return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

void check_qubit(const StateVector& state, int qubit, const char* what) {
    if (qubit < 0 || qubit >= state.n_qubits) {
        throw std::out_of_range(std::string(what) + " qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.n_qubits) +
                                " qubits");
    }
}

// Visits every amplitude pair (i0, i0 + mask) exactly once. The inner
// loop runs over contiguous indices so the component arithmetic can
// vectorize.
template <typename Update>
void for_each_pair(std::vector<complex_t>& amps, std::uint64_t mask, Update&& update) {
    complex_t* a = amps.data();
    const std::uint64_t dim = amps.size();
    for (std::uint64_t base = 0; base < dim; base += 2 * mask) {
        for (std::uint64_t i0 = base; i0 < base + mask; ++i0) {
            update(a[i0], a[i0 + mask]);
        }
    }
}

}  // namespace

Gate inverse(const Gate& gate) {
    Gate inv = gate;
    if (gate.kind != GateKind::Cz) inv.angle = -gate.angle;
    return inv;
}

StateVector zero_state(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("zero_state: n_qubits must be >= 1, got " +
                                    std::to_string(n_qubits));
    }
    if (n_qubits > kMaxQubits) {
        throw std::length_error("zero_state: " + std::to_string(n_qubits) +
                                " qubits exceeds the " + std::to_string(kMaxQubits) +
                                "-qubit memory budget");
    }
    StateVector state;
    state.n_qubits = n_qubits;
    state.amplitudes.assign(std::size_t{1} << n_qubits, complex_t{0.0, 0.0});
    state.amplitudes[0] = complex_t{1.0, 0.0};
    return state;
}

void apply_gate_inplace(StateVector& state, const Gate& gate) {
    check_qubit(state, gate.target, "gate target");
    switch (gate.kind) {
        case GateKind::Ry: {
            const double c = std::cos(gate.angle / 2.0);
            const double s = std::sin(gate.angle / 2.0);
            for_each_pair(state.amplitudes, qubit_mask(state.n_qubits, gate.target),
                          [c, s](complex_t& a0, complex_t& a1) {
                              const double r0 = a0.real(), i0 = a0.imag();
                              const double r1 = a1.real(), i1 = a1.imag();
                              a0 = complex_t{c * r0 - s * r1, c * i0 - s * i1};
                              a1 = complex_t{s * r0 + c * r1, s * i0 + c * i1};
                          });
            break;
        }
        case GateKind::Rz: {
            // diag(e^{-i theta/2}, e^{+i theta/2}); explicit components keep
            // this off the checked complex-multiply path.
            const double pr = std::cos(gate.angle / 2.0);
            const double pi = -std::sin(gate.angle / 2.0);
            for_each_pair(state.amplitudes, qubit_mask(state.n_qubits, gate.target),
                          [pr, pi](complex_t& a0, complex_t& a1) {
                              const double r0 = a0.real(), i0 = a0.imag();
                              const double r1 = a1.real(), i1 = a1.imag();
                              a0 = complex_t{r0 * pr - i0 * pi, r0 * pi + i0 * pr};
                              a1 = complex_t{r1 * pr + i1 * pi, -r1 * pi + i1 * pr};
                          });
            break;
        }
        case GateKind::Cz: {
            check_qubit(state, gate.control, "gate control");
            if (gate.control == gate.target) {
                throw std::invalid_argument("CZ control equals target");
            }
            const std::uint64_t both = qubit_mask(state.n_qubits, gate.target) |
                                       qubit_mask(state.n_qubits, gate.control);
            const std::uint64_t dim = state.dim();
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & both) == both) state.amplitudes[i] = -state.amplitudes[i];
            }
            break;
        }
    }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    apply_gate_inplace(state, gate);
    return state;
}

complex_t inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("inner_product: qubit counts differ (" +
                                    std::to_string(a.n_qubits) + " vs " +
                                    std::to_string(b.n_qubits) + ")");
    }
    complex_t acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return acc;
}

double squared_norm(const StateVector& state) {
    double acc = 0.0;
    for (const complex_t& amp : state.amplitudes) acc += std::norm(amp);
    return acc;
}

}  // namespace devqe
