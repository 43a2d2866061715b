#include "devqe/halton.hpp"

#include <stdexcept>

#include "devqe/rng.hpp"

namespace devqe {

namespace {

bool is_prime(std::uint32_t n) {
    for (std::uint32_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return n > 1;
}

// Radical inverse with a digit permutation. perm fixes 0, so the
// expansion still terminates at the highest nonzero digit.
double scrambled_radical_inverse(std::uint64_t index, std::uint32_t base,
                                 std::span<const std::uint32_t> perm) {
    double value = 0.0;
    double inv = 1.0 / base;
    while (index > 0) {
        const std::uint64_t digit = index % base;
        value += (perm.empty() ? digit : perm[digit]) * inv;
        inv /= base;
        index /= base;
    }
    return value;
}

}  // namespace

double radical_inverse(std::uint64_t index, std::uint32_t base) {
    if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");
    return scrambled_radical_inverse(index, base, {});
}

std::vector<std::uint32_t> halton_bases(std::size_t count) {
    std::vector<std::uint32_t> primes;
    primes.reserve(count);
    if (count > 0) primes.push_back(2);
    for (std::uint32_t candidate = 3; primes.size() < count; candidate += 2) {
        if (is_prime(candidate)) primes.push_back(candidate);
    }
    return primes;
}

std::vector<std::vector<double>> halton_population(int dimension, int count,
                                                   std::span<const Bounds> bounds,
                                                   std::optional<std::uint64_t> seed) {
    if (dimension < 1) throw std::invalid_argument("halton_population: dimension must be >= 1");
    if (count < 1) throw std::invalid_argument("halton_population: count must be >= 1");
    if (!bounds.empty() && static_cast<int>(bounds.size()) != dimension) {
        throw std::invalid_argument("halton_population: bounds size does not match dimension");
    }

    const std::vector<std::uint32_t> bases = halton_bases(static_cast<std::size_t>(dimension));

    std::uint64_t start = 0;
    std::vector<std::vector<std::uint32_t>> perms(dimension);
    if (seed) {
        Rng rng(*seed);
        start = rng.index(std::size_t{1} << 20);
        for (int d = 0; d < dimension; ++d) {
            const std::uint32_t base = bases[d];
            auto& perm = perms[d];
            perm.resize(base);
            for (std::uint32_t v = 0; v < base; ++v) perm[v] = v;
            // Fisher-Yates over the nonzero digits; 0 stays fixed.
            for (std::uint32_t v = base - 1; v > 1; --v) {
                std::swap(perm[v], perm[1 + rng.index(v)]);
            }
        }
    }

    std::vector<std::vector<double>> rows(count);
    for (int i = 0; i < count; ++i) {
        auto& row = rows[i];
        row.resize(dimension);
        for (int d = 0; d < dimension; ++d) {
            const double u = scrambled_radical_inverse(start + i + 1, bases[d], perms[d]);
            const Bounds b = bounds.empty() ? Bounds{} : bounds[d];
            row[d] = b.lo + (b.hi - b.lo) * u;
        }
    }
    return rows;
}

}  // namespace devqe
