#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "devqe/statevector.hpp"

namespace devqe {

enum class PauliOp : unsigned char { I, X, Y, Z };

char to_char(PauliOp op);
PauliOp pauli_from_char(char c);

// One Hamiltonian term: a real coefficient times a tensor product of
// Pauli operators, letters[q] acting on qubit q.
struct PauliString {
    double coefficient = 1.0;
    std::vector<PauliOp> letters;

    static PauliString parse(double coefficient, std::string_view letters);
    std::string letters_string() const;
};

// coefficient * (P_0 x P_1 x ... x P_{n-1}) |state>
StateVector apply_pauli_string(const StateVector& state, const PauliString& term);

// sum_k <state| terms[k] |state>. The accumulated imaginary part must
// cancel; |Im| > 1e-8 raises a numerical-consistency error.
double expectation(const StateVector& state, std::span<const PauliString> terms);

}  // namespace devqe
