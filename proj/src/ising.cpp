#include "devqe/ising.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace devqe {

namespace {

void check_chain(const IsingChain& chain) {
    if (chain.n_sites < 2) {
        throw std::invalid_argument("ising chain needs n_sites >= 2, got " +
                                    std::to_string(chain.n_sites));
    }
    if (chain.axis == PauliOp::I) {
        throw std::invalid_argument("ising chain axis must be X, Y or Z");
    }
}

std::int64_t binomial(int n, int k) {
    std::int64_t out = 1;
    for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
    return out;
}

}  // namespace

std::vector<PauliString> build_hamiltonian(const IsingChain& chain) {
    check_chain(chain);
    std::vector<PauliString> terms;
    terms.reserve(chain.n_sites - 1);
    for (int j = 0; j + 1 < chain.n_sites; ++j) {
        PauliString term;
        term.coefficient = -chain.coupling;
        term.letters.assign(chain.n_sites, PauliOp::I);
        term.letters[j] = chain.axis;
        term.letters[j + 1] = chain.axis;
        terms.push_back(std::move(term));
    }
    return terms;
}

double ground_energy(const IsingChain& chain) {
    check_chain(chain);
    return -chain.coupling * (chain.n_sites - 1);
}

std::vector<SpectrumLevel> exact_spectrum(const IsingChain& chain) {
    check_chain(chain);
    const int bonds = chain.n_sites - 1;
    std::vector<SpectrumLevel> levels;
    levels.reserve(bonds + 1);
    for (int k = 0; k <= bonds; ++k) {
        levels.push_back({chain.coupling * (-bonds + 2.0 * k), 2 * binomial(bonds, k)});
    }
    std::sort(levels.begin(), levels.end(),
              [](const SpectrumLevel& a, const SpectrumLevel& b) { return a.energy < b.energy; });
    return levels;
}

}  // namespace devqe
