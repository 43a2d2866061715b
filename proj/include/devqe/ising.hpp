#pragma once

#include <cstdint>
#include <vector>

#include "devqe/pauli.hpp"

namespace devqe {

// Open-boundary 1D chain, H = -J sum_j sigma_j sigma_{j+1}, zero field.
struct IsingChain {
    int n_sites = 2;
    double coupling = 1.0;  // J
    PauliOp axis = PauliOp::Y;
};

// n_sites - 1 two-body terms; term j carries -J on sites (j, j+1).
std::vector<PauliString> build_hamiltonian(const IsingChain& chain);

// -J (n_sites - 1): all bonds aligned.
double ground_energy(const IsingChain& chain);

struct SpectrumLevel {
    double energy = 0.0;
    std::int64_t degeneracy = 0;
};

// Closed-form spectrum. The n-1 bond operators commute and square to the
// identity, so every joint sign pattern spans a 2-dimensional eigenspace:
// level k has energy J(-(n-1) + 2k) and degeneracy 2 C(n-1, k). Levels are
// returned sorted ascending by energy.
std::vector<SpectrumLevel> exact_spectrum(const IsingChain& chain);

}  // namespace devqe
