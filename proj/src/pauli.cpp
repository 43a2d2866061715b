#include "devqe/pauli.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace devqe {

namespace {

// A Pauli string permutes basis states with a phase:
//   P |i> = phase(i) |i ^ flip>
// where flip collects the X/Y positions and
//   phase(i) = i^{#Y} * (-1)^{popcount(i & sign)}
// with sign collecting the Y/Z positions (Y|b> = i(-1)^b |1-b>,
// Z|b> = (-1)^b |b>).
struct CompiledPauli {
    std::uint64_t flip = 0;
    std::uint64_t sign = 0;
    complex_t base{1.0, 0.0};  // coefficient * i^{#Y}
};

CompiledPauli compile(const PauliString& term, int n_qubits) {
    if (static_cast<int>(term.letters.size()) != n_qubits) {
        throw std::invalid_argument("pauli string has " + std::to_string(term.letters.size()) +
                                    " letters, state has " + std::to_string(n_qubits) +
                                    " qubits");
    }
    CompiledPauli out;
    int n_y = 0;
    for (int q = 0; q < n_qubits; ++q) {
        const std::uint64_t mask = std::uint64_t{1} << (n_qubits - 1 - q);
        switch (term.letters[q]) {
            case PauliOp::I: break;
            case PauliOp::X: out.flip |= mask; break;
            case PauliOp::Y:
                out.flip |= mask;
                out.sign |= mask;
                ++n_y;
                break;
            case PauliOp::Z: out.sign |= mask; break;
        }
    }
    static constexpr complex_t i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    out.base = term.coefficient * i_pow[n_y % 4];
    return out;
}

}  // namespace

char to_char(PauliOp op) {
    switch (op) {
        case PauliOp::I: return 'I';
        case PauliOp::X: return 'X';
        case PauliOp::Y: return 'Y';
        case PauliOp::Z: return 'Z';
    }
    return '?';
}

PauliOp pauli_from_char(char c) {
    switch (c) {
        case 'I': return PauliOp::I;
        case 'X': return PauliOp::X;
        case 'Y': return PauliOp::Y;
        case 'Z': return PauliOp::Z;
        default:
            throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
    }
}

PauliString PauliString::parse(double coefficient, std::string_view letters) {
    PauliString term;
    term.coefficient = coefficient;
    term.letters.reserve(letters.size());
    for (char c : letters) term.letters.push_back(pauli_from_char(c));
    return term;
}

std::string PauliString::letters_string() const {
    std::string out;
    out.reserve(letters.size());
    for (PauliOp op : letters) out.push_back(to_char(op));
    return out;
}

StateVector apply_pauli_string(const StateVector& state, const PauliString& term) {
    const CompiledPauli p = compile(term, state.n_qubits);
    StateVector out;
    out.n_qubits = state.n_qubits;
    out.amplitudes.resize(state.dim());
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        const bool negate = std::popcount(i & p.sign) & 1;
        const complex_t phase = negate ? -p.base : p.base;
        out.amplitudes[i ^ p.flip] = phase * state.amplitudes[i];
    }
    return out;
}

namespace {

bool is_adjacent_bit_pair(std::uint64_t mask) {
    return std::popcount(mask) == 2 && (mask & (mask >> 1)) != 0;
}

// <psi| sigma_q sigma_{q+1} |psi> for X or Y pairs on adjacent qubits,
// where flip == sign-or-zero masks two adjacent bits. Written over
// contiguous quartet runs; the value is real by construction:
//   sum over quartets 2 [ Re(conj(a11) a00) +- Re(conj(a10) a01) ].
double adjacent_pair_expectation(const complex_t* a, std::uint64_t dim, std::uint64_t flip,
                                 bool signed_pair) {
    const std::uint64_t m = (flip & (flip >> 1));  // lower of the two bits
    const double cross_sign = signed_pair ? -1.0 : 1.0;
    double acc = 0.0;
    for (std::uint64_t block = 0; block < dim; block += 4 * m) {
        for (std::uint64_t i = block; i < block + m; ++i) {
            const complex_t& a00 = a[i];
            const complex_t& a01 = a[i + m];
            const complex_t& a10 = a[i + 2 * m];
            const complex_t& a11 = a[i + 3 * m];
            acc += a11.real() * a00.real() + a11.imag() * a00.imag() +
                   cross_sign * (a10.real() * a01.real() + a10.imag() * a01.imag());
        }
    }
    return 2.0 * acc;
}

}  // namespace

double expectation(const StateVector& state, std::span<const PauliString> terms) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    const complex_t* a = state.amplitudes.data();
    const std::uint64_t dim = state.dim();
    for (const PauliString& term : terms) {
        const CompiledPauli p = compile(term, state.n_qubits);
        if (p.flip == 0) {
            // Diagonal string (I/Z letters only).
            double re = 0.0;
            for (std::uint64_t i = 0; i < dim; ++i) {
                const double sign = (std::popcount(i & p.sign) & 1) ? -1.0 : 1.0;
                re += sign * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
            }
            acc_re += p.base.real() * re;
            continue;
        }
        if ((p.sign == 0 || p.sign == p.flip) && is_adjacent_bit_pair(p.flip)) {
            // XX (sign == 0) or YY (sign == flip) on adjacent qubits.
            acc_re += p.base.real() *
                      adjacent_pair_expectation(a, dim, p.flip, p.sign == p.flip);
            continue;
        }
        double re = 0.0, im = 0.0;
        for (std::uint64_t i = 0; i < dim; ++i) {
            const double sign = (std::popcount(i & p.sign) & 1) ? -1.0 : 1.0;
            const complex_t& ket = a[i];
            const complex_t& bra = a[i ^ p.flip];  // conjugated below
            re += sign * (bra.real() * ket.real() + bra.imag() * ket.imag());
            im += sign * (bra.real() * ket.imag() - bra.imag() * ket.real());
        }
        acc_re += p.base.real() * re - p.base.imag() * im;
        acc_im += p.base.real() * im + p.base.imag() * re;
    }
    if (std::abs(acc_im) > 1e-8) {
        throw std::runtime_error("expectation: imaginary part " + std::to_string(acc_im) +
                                 " exceeds 1e-8");
    }
    assert(std::abs(acc_im) < 1e-10);
    return acc_re;
}

}  // namespace devqe
