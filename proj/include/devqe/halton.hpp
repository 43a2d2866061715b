#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace devqe {

struct Bounds {
    double lo = -std::numbers::pi;
    double hi = std::numbers::pi;
};

// Van der Corput radical inverse of `index` in the given base.
double radical_inverse(std::uint64_t index, std::uint32_t base);

// The first `count` primes (2, 3, 5, ...), one Halton base per dimension.
std::vector<std::uint32_t> halton_bases(std::size_t count);

// Rows of the Halton sequence mapped affinely into per-dimension bounds:
// row i, dimension d = lo_d + (hi_d - lo_d) * h_{p_d}(i + 1). A seed
// randomizes the sequence (shared random start index plus a digit
// permutation per base) while keeping its low discrepancy; without a
// seed the raw sequence is returned.
std::vector<std::vector<double>> halton_population(int dimension, int count,
                                                   std::span<const Bounds> bounds,
                                                   std::optional<std::uint64_t> seed = {});

}  // namespace devqe
