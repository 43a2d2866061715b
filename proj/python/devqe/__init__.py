"""Statevector VQE on the 1D zero-field Ising chain.

Differential evolution (binomial/exponential crossover), SPSA, L-BFGS with
parameter-shift gradients and the DE -> L-BFGS hybrid, over an exact
statevector simulator.
"""

from ._core import (
    Ansatz,
    DEConfig,
    IsingChain,
    LbfgsConfig,
    Objective,
    SpsaConfig,
    de_minimize,
    energy,
    energy_objective,
    exact_spectrum,
    ground_energy,
    hybrid_minimize,
    landscape_scan,
    lbfgs_minimize,
    parameter_shift_gradient,
    run_trial,
    spsa_minimize,
    statevector,
)

__all__ = [
    "Ansatz",
    "DEConfig",
    "IsingChain",
    "LbfgsConfig",
    "Objective",
    "SpsaConfig",
    "de_minimize",
    "energy",
    "energy_objective",
    "exact_spectrum",
    "ground_energy",
    "hybrid_minimize",
    "landscape_scan",
    "lbfgs_minimize",
    "parameter_shift_gradient",
    "run_trial",
    "spsa_minimize",
    "statevector",
]
