#include <doctest.h>

#include <numbers>
#include <set>
#include <stdexcept>

#include "devqe/halton.hpp"

using namespace devqe;

TEST_CASE("radical inverse values") {
    CHECK(radical_inverse(1, 2) == 0.5);
    CHECK(radical_inverse(2, 2) == 0.25);
    CHECK(radical_inverse(3, 2) == 0.75);
    CHECK(radical_inverse(1, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(radical_inverse(2, 3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(radical_inverse(1, 1), std::invalid_argument);
}

TEST_CASE("halton bases are the primes, extended on demand") {
    const auto bases = halton_bases(200);
    REQUIRE(bases.size() == 200);
    CHECK(bases[0] == 2);
    CHECK(bases[1] == 3);
    CHECK(bases[2] == 5);
    CHECK(bases[5] == 13);
    CHECK(bases[199] == 1223);  // the 200th prime
}

TEST_CASE("unseeded population follows the raw sequence") {
    const std::vector<Bounds> bounds(2, Bounds{-std::numbers::pi, std::numbers::pi});
    const auto rows = halton_population(2, 3, bounds);
    REQUIRE(rows.size() == 3);
    // Row 0, base 2: h(1) = 1/2 -> midpoint of [-pi, pi] is 0.
    CHECK(rows[0][0] == doctest::Approx(0.0).epsilon(1e-15));
    // Row 1, base 2: h(2) = 1/4 -> -pi/2.
    CHECK(rows[1][0] == doctest::Approx(-std::numbers::pi / 2).epsilon(1e-12));
    CHECK(rows[2][0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    // Base 3 column: 1/3, 2/3 of the interval.
    CHECK(rows[0][1] == doctest::Approx(-std::numbers::pi / 3).epsilon(1e-12));
    CHECK(rows[1][1] == doctest::Approx(std::numbers::pi / 3).epsilon(1e-12));
}

TEST_CASE("seeded populations stay in bounds and vary with the seed") {
    const std::vector<Bounds> bounds(6, Bounds{-1.0, 2.0});
    const auto a = halton_population(6, 40, bounds, 1);
    const auto b = halton_population(6, 40, bounds, 2);
    const auto a_again = halton_population(6, 40, bounds, 1);
    CHECK(a == a_again);
    CHECK(a != b);
    for (const auto& row : a) {
        for (double v : row) {
            CHECK(v >= -1.0);
            CHECK(v <= 2.0);
        }
    }
    // Rows are distinct points.
    std::set<std::vector<double>> unique(a.begin(), a.end());
    CHECK(unique.size() == a.size());
}

TEST_CASE("halton_population validates its arguments") {
    CHECK_THROWS_AS(halton_population(0, 5, {}), std::invalid_argument);
    CHECK_THROWS_AS(halton_population(3, 0, {}), std::invalid_argument);
    const std::vector<Bounds> wrong(2, Bounds{});
    CHECK_THROWS_AS(halton_population(3, 5, wrong), std::invalid_argument);
}
