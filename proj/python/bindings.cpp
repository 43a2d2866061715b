#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "devqe/bench.hpp"

namespace py = pybind11;
using namespace devqe;

namespace {

PauliOp axis_from_letter(const std::string& letter) {
    if (letter.size() == 1) return pauli_from_char(letter[0]);
    throw std::invalid_argument("axis must be a single Pauli letter");
}

Objective objective_from_callable(py::function f, int dimension) {
    Objective objective;
    objective.dimension = dimension;
    objective.evaluate = [f](std::span<const double> x) {
        py::gil_scoped_acquire gil;
        return f(std::vector<double>(x.begin(), x.end())).cast<double>();
    };
    return objective;
}

py::dict result_to_dict(const OptResult& result) {
    py::dict d;
    d["best_params"] = result.best_params;
    d["best_energy"] = result.best_energy;
    d["iterations"] = result.iterations;
    d["evaluations"] = result.evaluations;
    d["converged"] = result.converged;
    d["trace"] = result.trace;
    return d;
}

py::dict record_to_dict(const TrialRecord& record) {
    py::dict d;
    d["n"] = record.n;
    d["layers"] = record.layers;
    d["seed"] = record.seed;
    d["final_energy"] = record.final_energy;
    d["delta"] = record.delta;
    d["iterations"] = record.iterations;
    d["evaluations"] = record.evaluations;
    d["converged"] = record.converged;
    d["wall_time"] = record.wall_time;
    d["nearest_level"] = record.nearest_level;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Statevector VQE on the zero-field Ising chain with DE and local optimizers";

    py::class_<IsingChain>(m, "IsingChain")
        .def(py::init([](int n_sites, double coupling, const std::string& axis) {
                 return IsingChain{n_sites, coupling, axis_from_letter(axis)};
             }),
             py::arg("n_sites"), py::arg("coupling") = 1.0, py::arg("axis") = "Y")
        .def_readonly("n_sites", &IsingChain::n_sites)
        .def_readonly("coupling", &IsingChain::coupling);

    py::class_<Ansatz>(m, "Ansatz")
        .def(py::init([](int n_qubits, int n_layers, bool include_initial_ry) {
                 return Ansatz{n_qubits, n_layers, include_initial_ry};
             }),
             py::arg("n_qubits"), py::arg("n_layers") = 1,
             py::arg("include_initial_ry") = true)
        .def_readonly("n_qubits", &Ansatz::n_qubits)
        .def_readonly("n_layers", &Ansatz::n_layers)
        .def_property_readonly("parameter_count",
                               [](const Ansatz& a) { return parameter_count(a); });

    py::class_<Objective>(m, "Objective")
        .def_readonly("dimension", &Objective::dimension)
        .def("__call__",
             [](const Objective& o, const std::vector<double>& x) { return o(x); });

    m.def("ground_energy", &ground_energy, py::arg("chain"));
    m.def(
        "exact_spectrum",
        [](const IsingChain& chain) {
            std::vector<std::pair<double, std::int64_t>> out;
            for (const SpectrumLevel& level : exact_spectrum(chain)) {
                out.emplace_back(level.energy, level.degeneracy);
            }
            return out;
        },
        py::arg("chain"), "List of (energy, degeneracy) pairs, ascending");

    m.def(
        "statevector",
        [](const Ansatz& ansatz, const std::vector<double>& params) {
            return prepare_state(ansatz, params).amplitudes;
        },
        py::arg("ansatz"), py::arg("params"),
        "Amplitudes of |psi(theta)>, qubit 0 as the most significant bit");

    m.def(
        "energy",
        [](const Ansatz& ansatz, const IsingChain& chain, const std::vector<double>& params) {
            return energy(ansatz, chain, params);
        },
        py::arg("ansatz"), py::arg("chain"), py::arg("params"));

    m.def("energy_objective", &make_energy_objective, py::arg("ansatz"), py::arg("chain"));

    m.def(
        "parameter_shift_gradient",
        [](const Objective& objective, const std::vector<double>& params) {
            return parameter_shift_gradient(objective, params);
        },
        py::arg("objective"), py::arg("params"));

    py::class_<DEConfig>(m, "DEConfig")
        .def(py::init<>())
        .def_readwrite("population_multiplier", &DEConfig::population_multiplier)
        .def_readwrite("mutation_min", &DEConfig::mutation_min)
        .def_readwrite("mutation_max", &DEConfig::mutation_max)
        .def_readwrite("crossover_rate", &DEConfig::crossover_rate)
        .def_property(
            "crossover",
            [](const DEConfig& c) {
                return c.crossover == CrossoverKind::Binomial ? "bin" : "exp";
            },
            [](DEConfig& c, const std::string& name) {
                if (name == "bin") {
                    c.crossover = CrossoverKind::Binomial;
                } else if (name == "exp") {
                    c.crossover = CrossoverKind::Exponential;
                } else {
                    throw std::invalid_argument("crossover must be 'bin' or 'exp'");
                }
            })
        .def_readwrite("max_iterations", &DEConfig::max_iterations)
        .def_readwrite("abs_tol", &DEConfig::abs_tol)
        .def_readwrite("rel_tol", &DEConfig::rel_tol)
        .def_readwrite("seed", &DEConfig::seed)
        .def_readwrite("jobs", &DEConfig::jobs)
        .def_readwrite("record_trace", &DEConfig::record_trace);

    m.def(
        "de_minimize",
        [](const Objective& objective, const DEConfig& config) {
            OptResult result;
            {
                py::gil_scoped_release release;
                result = de_minimize(objective, config);
            }
            return result_to_dict(result);
        },
        py::arg("objective"), py::arg("config") = DEConfig{});
    m.def(
        "de_minimize",
        [](py::function f, int dimension, const DEConfig& config) {
            DEConfig serial = config;
            serial.jobs = 1;  // python callables stay on one thread
            return result_to_dict(de_minimize(objective_from_callable(f, dimension), serial));
        },
        py::arg("objective"), py::arg("dimension"), py::arg("config") = DEConfig{});

    py::class_<LbfgsConfig>(m, "LbfgsConfig")
        .def(py::init<>())
        .def_readwrite("memory", &LbfgsConfig::memory)
        .def_readwrite("g_tol", &LbfgsConfig::g_tol)
        .def_readwrite("f_tol", &LbfgsConfig::f_tol)
        .def_readwrite("max_iterations", &LbfgsConfig::max_iterations)
        .def_readwrite("max_evaluations", &LbfgsConfig::max_evaluations)
        .def_readwrite("record_trace", &LbfgsConfig::record_trace);

    m.def(
        "lbfgs_minimize",
        [](const Objective& objective, const std::vector<double>& x0,
           const LbfgsConfig& config) {
            OptResult result;
            {
                py::gil_scoped_release release;
                result = lbfgs_minimize(objective, make_parameter_shift_gradient(objective),
                                        x0, config);
            }
            return result_to_dict(result);
        },
        py::arg("objective"), py::arg("x0"), py::arg("config") = LbfgsConfig{},
        "L-BFGS with parameter-shift gradients");

    py::class_<SpsaConfig>(m, "SpsaConfig")
        .def(py::init<>())
        .def_readwrite("max_iterations", &SpsaConfig::max_iterations)
        .def_readwrite("a", &SpsaConfig::a)
        .def_readwrite("c", &SpsaConfig::c)
        .def_readwrite("target_step", &SpsaConfig::target_step)
        .def_readwrite("seed", &SpsaConfig::seed)
        .def_readwrite("record_trace", &SpsaConfig::record_trace);

    m.def(
        "spsa_minimize",
        [](const Objective& objective, const std::vector<double>& x0,
           const SpsaConfig& config) {
            OptResult result;
            {
                py::gil_scoped_release release;
                result = spsa_minimize(objective, x0, config);
            }
            return result_to_dict(result);
        },
        py::arg("objective"), py::arg("x0"), py::arg("config"));

    m.def(
        "hybrid_minimize",
        [](const Objective& objective, const DEConfig& de_config,
           const LbfgsConfig& lbfgs_config) {
            OptResult result;
            {
                py::gil_scoped_release release;
                result = hybrid_minimize(objective, make_parameter_shift_gradient(objective),
                                         de_config, lbfgs_config);
            }
            return result_to_dict(result);
        },
        py::arg("objective"), py::arg("de_config") = DEConfig{},
        py::arg("lbfgs_config") = LbfgsConfig{},
        "DE global phase then an L-BFGS polish from its best member");

    m.def(
        "run_trial",
        [](int n, int layers, const std::string& optimizer, const std::string& crossover,
           int pop_mult, std::uint64_t seed, int maxiter) {
            TrialConfig config;
            config.n = n;
            config.layers = layers;
            config.optimizer = optimizer_from_name(optimizer);
            config.de.crossover = crossover == "exp" ? CrossoverKind::Exponential
                                                     : CrossoverKind::Binomial;
            config.de.population_multiplier = pop_mult;
            if (maxiter > 0) config.de.max_iterations = maxiter;
            TrialRecord record;
            {
                py::gil_scoped_release release;
                record = run_trial(config, seed);
            }
            return record_to_dict(record);
        },
        py::arg("n"), py::arg("layers") = 1, py::arg("optimizer") = "de",
        py::arg("crossover") = "bin", py::arg("pop_mult") = 1, py::arg("seed") = 0,
        py::arg("maxiter") = 0, "One seeded benchmark trial; returns the record as a dict");

    m.def(
        "landscape_scan",
        [](const Ansatz& ansatz, const IsingChain& chain, int index_i, int index_j,
           int resolution, std::uint64_t seed) {
            LandscapeGrid grid;
            grid.resolution = resolution;
            py::gil_scoped_release release;
            return landscape_scan(ansatz, chain, index_i, index_j, grid, seed);
        },
        py::arg("ansatz"), py::arg("chain"), py::arg("index_i"), py::arg("index_j"),
        py::arg("resolution") = 101, py::arg("seed") = 0,
        "Row-major energies over a 2-parameter grid, other parameters seeded uniform");
}
