#pragma once

#include <cstdint>
#include <random>

namespace devqe {

// Deterministic 64-bit generator used by every stochastic component.
// Helpers consume the raw stream directly instead of going through
// std::*_distribution, so a (seed, call sequence) pair always produces
// the same draws regardless of standard library version.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
    std::size_t index(std::size_t n) {
        using u128 = unsigned __int128;
        return static_cast<std::size_t>((static_cast<u128>(gen_()) * n) >> 64);
    }

    int rademacher() { return (gen_() & 1u) ? 1 : -1; }

private:
    std::mt19937_64 gen_;
};

}  // namespace devqe
