#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "devqe/bench.hpp"

using namespace devqe;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("devqe_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int value = 0;
        return value;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

TrialRecord fake_record(int n, std::uint64_t seed, double delta) {
    TrialRecord record;
    record.n = n;
    record.layers = 1;
    record.seed = seed;
    record.delta = delta;
    record.final_energy = -(n - 1.0) * (1.0 - delta);
    return record;
}

}  // namespace

TEST_CASE("run_trial fills every field consistently") {
    TrialConfig config;
    config.n = 3;
    config.optimizer = OptimizerKind::Lbfgs;
    const TrialRecord record = run_trial(config, 42);
    CHECK(record.n == 3);
    CHECK(record.layers == 1);
    CHECK(record.seed == 42);
    CHECK(record.iterations > 0);
    CHECK(record.evaluations > 0);
    CHECK(record.wall_time > 0.0);
    // delta recomputes from the stored energy.
    CHECK(std::abs(record.delta - (1.0 - std::abs(record.final_energy / -2.0))) < 1e-12);
    const auto levels = exact_spectrum(IsingChain{3, 1.0, PauliOp::Y});
    CHECK(record.nearest_level >= 0);
    CHECK(record.nearest_level < static_cast<int>(levels.size()));
}

TEST_CASE("run_trial respects the variational bound at n = 2") {
    for (OptimizerKind kind :
         {OptimizerKind::De, OptimizerKind::Spsa, OptimizerKind::Lbfgs}) {
        TrialConfig config;
        config.n = 2;
        config.optimizer = kind;
        config.de.max_iterations = 200;
        const TrialRecord record = run_trial(config, 7);
        CHECK(record.final_energy >= -1.0 - 1e-9);
    }
}

TEST_CASE("lbfgs trials succeed at n = 3 for nearly every seed") {
    TrialConfig config;
    config.n = 3;
    config.optimizer = OptimizerKind::Lbfgs;
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        if (run_trial(config, seed).delta <= 1e-2) ++successes;
    }
    CHECK(successes >= 19);
}

TEST_CASE("success_rate counting and the Wilson interval") {
    std::vector<TrialRecord> records = {fake_record(4, 0, 0.005), fake_record(4, 1, 0.02),
                                        fake_record(4, 2, 0.0)};
    const SuccessRateSummary summary = success_rate(records, 1e-2, "lbfgs");
    CHECK(summary.success_count == 2);
    CHECK(summary.n_opt == 3);
    CHECK(summary.success_rate == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    SUBCASE("all-zero deltas give rate one") {
        std::vector<TrialRecord> perfect = {fake_record(4, 0, 0.0), fake_record(4, 1, 0.0)};
        CHECK(success_rate(perfect, 1e-2, "de").success_rate == 1.0);
    }
    SUBCASE("zero threshold counts only exact successes") {
        std::vector<TrialRecord> mixed = {fake_record(4, 0, 0.0), fake_record(4, 1, 1e-9)};
        CHECK(success_rate(mixed, 0.0, "de").success_count == 1);
    }
    SUBCASE("closed-form Wilson half-width at p = 1, n = 20") {
        std::vector<TrialRecord> perfect;
        for (std::uint64_t s = 0; s < 20; ++s) perfect.push_back(fake_record(4, s, 0.0));
        const double z = 1.959963984540054;
        const double expected = (z * z / 40.0) / (1.0 + z * z / 20.0);
        CHECK(success_rate(perfect, 1e-2, "de").ci95 ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(success_rate({}, 1e-2, "de"), std::invalid_argument);
        std::vector<TrialRecord> mixed = {fake_record(4, 0, 0.0), fake_record(5, 1, 0.0)};
        CHECK_THROWS_AS(success_rate(mixed, 1e-2, "de"), std::invalid_argument);
    }
}

TEST_CASE("trial records round-trip through JSON lines") {
    TrialRecord record = fake_record(6, 123, 0.004);
    record.iterations = 812;
    record.evaluations = 19488;
    record.converged = true;
    record.wall_time = 1.25;
    record.nearest_level = 0;
    const TrialRecord parsed = trial_record_from_json(to_json_line(record));
    CHECK(parsed.n == record.n);
    CHECK(parsed.layers == record.layers);
    CHECK(parsed.seed == record.seed);
    CHECK(parsed.final_energy == record.final_energy);
    CHECK(parsed.delta == record.delta);
    CHECK(parsed.iterations == record.iterations);
    CHECK(parsed.evaluations == record.evaluations);
    CHECK(parsed.converged == record.converged);
    CHECK(parsed.wall_time == record.wall_time);
    CHECK(parsed.nearest_level == record.nearest_level);

    CHECK(read_records("/nonexistent/devqe/records.jsonl").empty());
}

TEST_CASE("sweep runs the full seed grid and is resumable") {
    TempDir dir;
    ExperimentSpec spec;
    spec.n_range = {2, 3};
    spec.base.optimizer = OptimizerKind::Lbfgs;
    spec.n_opt = 3;
    spec.base_seed = 100;
    spec.record_path = dir.file("records.jsonl");
    spec.summary_path = dir.file("summary.csv");

    const SweepResult first = sweep(spec);
    REQUIRE(first.records.size() == 6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(first.records[i].n == 2);
        CHECK(first.records[i].seed == 100 + i);
        CHECK(first.records[3 + i].n == 3);
    }
    REQUIRE(first.summaries.size() == 2);
    CHECK(first.summaries[0].n == 2);
    CHECK(first.summaries[1].n == 3);

    std::ifstream csv(spec.summary_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n,layers,optimizer,n_opt,success_count,success_rate,ci95");

    // Widening the n range reruns only the missing pairs: preexisting
    // records come back bit-identical, wall_time included.
    ExperimentSpec wider = spec;
    wider.n_range = {2, 3, 4};
    const SweepResult second = sweep(wider);
    REQUIRE(second.records.size() == 9);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(second.records[i].wall_time == first.records[i].wall_time);
        CHECK(second.records[i].final_energy == first.records[i].final_energy);
    }

    SUBCASE("validation") {
        ExperimentSpec bad = spec;
        bad.n_range = {};
        CHECK_THROWS_AS(sweep(bad), std::invalid_argument);
        bad = spec;
        bad.n_opt = 0;
        CHECK_THROWS_AS(sweep(bad), std::invalid_argument);
    }
}

TEST_CASE("sweep records are independent of trial parallelism") {
    TempDir dir;
    ExperimentSpec spec;
    spec.n_range = {3};
    spec.base.optimizer = OptimizerKind::De;
    spec.base.de.max_iterations = 200;
    spec.n_opt = 4;
    spec.record_path = dir.file("serial.jsonl");

    const SweepResult serial = sweep(spec);
    spec.record_path = dir.file("threaded.jsonl");
    spec.parallel_trials = 4;
    const SweepResult threaded = sweep(spec);

    REQUIRE(serial.records.size() == threaded.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].seed == threaded.records[i].seed);
        CHECK(serial.records[i].final_energy == threaded.records[i].final_energy);
        CHECK(serial.records[i].iterations == threaded.records[i].iterations);
        CHECK(serial.records[i].evaluations == threaded.records[i].evaluations);
    }
}

TEST_CASE("landscape_scan geometry and bounds") {
    const Ansatz ansatz{3, 1, true};
    const IsingChain chain{3, 1.0, PauliOp::Y};
    LandscapeGrid grid;
    grid.resolution = 21;

    const auto energies = landscape_scan(ansatz, chain, 0, 3, grid, 11);
    REQUIRE(energies.size() == 21u * 21u);
    for (double e : energies) {
        CHECK(e >= -2.0 - 1e-9);
        CHECK(e <= 2.0 + 1e-9);
    }

    // Free parameters are the Ry/Rz pair of qubit 0; -pi and pi columns
    // coincide by periodicity.
    for (int r = 0; r < 21; ++r) {
        CHECK(std::abs(energies[r * 21] - energies[r * 21 + 20]) < 1e-9);
        CHECK(std::abs(energies[r] - energies[20 * 21 + r]) < 1e-9);
    }

    SUBCASE("deterministic for a fixed seed") {
        CHECK(landscape_scan(ansatz, chain, 0, 3, grid, 11) == energies);
    }
    SUBCASE("csv layout") {
        std::ostringstream out;
        write_landscape_csv(out, energies, grid);
        std::istringstream in(out.str());
        std::string line;
        int rows = 0;
        std::getline(in, line);
        CHECK(line == "theta_i,theta_j,energy");
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 21 * 21);
    }
    SUBCASE("index validation") {
        CHECK_THROWS_AS(landscape_scan(ansatz, chain, 0, 0, grid, 1), std::invalid_argument);
        CHECK_THROWS_AS(landscape_scan(ansatz, chain, 0, 99, grid, 1), std::out_of_range);
    }
}

TEST_CASE("n = 4 landscapes expose several basins for some seeds") {
    const Ansatz ansatz{4, 1, true};
    const IsingChain chain{4, 1.0, PauliOp::Y};
    LandscapeGrid grid;
    grid.resolution = 41;
    const int res = grid.resolution;

    // Count interior grid cells strictly below all eight neighbours; two or
    // more of them means two separated basins in the slice.
    bool found_multiple_basins = false;
    for (std::uint64_t seed = 0; seed < 5 && !found_multiple_basins; ++seed) {
        const auto energies = landscape_scan(ansatz, chain, 0, 1, grid, seed);
        int strict_minima = 0;
        for (int r = 1; r + 1 < res; ++r) {
            for (int c = 1; c + 1 < res; ++c) {
                const double e = energies[r * res + c];
                bool lowest = true;
                for (int dr = -1; dr <= 1 && lowest; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        if (dr == 0 && dc == 0) continue;
                        if (energies[(r + dr) * res + (c + dc)] <= e) {
                            lowest = false;
                            break;
                        }
                    }
                }
                if (lowest) ++strict_minima;
            }
        }
        found_multiple_basins = strict_minima >= 2;
    }
    CHECK(found_multiple_basins);
}

TEST_CASE("optimizer names round-trip") {
    for (OptimizerKind kind : {OptimizerKind::De, OptimizerKind::Spsa, OptimizerKind::Lbfgs,
                               OptimizerKind::Hybrid}) {
        CHECK(optimizer_from_name(optimizer_name(kind)) == kind);
    }
    CHECK_THROWS_AS(optimizer_from_name("bogus"), std::invalid_argument);
}
