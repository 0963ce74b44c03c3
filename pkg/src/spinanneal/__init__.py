"""Bifurcation-based quantum annealing of dipolar-coupled spin-1 chains.

A chain of spin-1 sites, prepared in |0...0>, is carried into the
entangled (|+1...+1> + |-1...-1>)/sqrt(2) state by ramping the detuning
of a global microwave drive while its amplitude follows a Gaussian
envelope. The package provides the Hamiltonian builders (lab frame and
rotating frame), closed- and open-system propagators, spectral/parity
analysis, and a config-driven CLI with figure presets.
"""

from .config import ConfigError, ExperimentConfig, parse_config
from .dynamics import (
    EvolveOptions,
    ObservableTargets,
    Trajectory,
    evolve_lindblad,
    evolve_schrodinger,
    instantaneous_ground_state,
    oracle_propagate,
    record_observables,
)
from .hamiltonians import (
    ChainSpec,
    ProblemSpec,
    build_bifurcation_driver,
    build_driver_spin_half,
    build_lab_frame,
    build_nv_static,
    build_problem_spin1,
    build_problem_spin_half,
    build_rwa_frame,
    dipolar_couplings,
    total_spin_half,
)
from .linalg import (
    ToleranceError,
    commutator_norm,
    eig_herm,
    expm_mul,
    fidelity_pure,
    kron_embed,
)
from .schedules import Schedule, linear_ramp
from .spectra import SpectrumTrack, min_gap, parity_resolved_track, track_spectrum
from .spinops import (
    Spin1Ops,
    SpinHalfOps,
    all_zero_state,
    ghz_state,
    parity_op,
    product_state,
    spin1_ops,
    spin_half_ops,
)

__all__ = [
    "ChainSpec",
    "ConfigError",
    "EvolveOptions",
    "ExperimentConfig",
    "ObservableTargets",
    "ProblemSpec",
    "Schedule",
    "Spin1Ops",
    "SpinHalfOps",
    "SpectrumTrack",
    "ToleranceError",
    "Trajectory",
    "all_zero_state",
    "build_bifurcation_driver",
    "build_driver_spin_half",
    "build_lab_frame",
    "build_nv_static",
    "build_problem_spin1",
    "build_problem_spin_half",
    "build_rwa_frame",
    "commutator_norm",
    "dipolar_couplings",
    "eig_herm",
    "evolve_lindblad",
    "evolve_schrodinger",
    "expm_mul",
    "fidelity_pure",
    "ghz_state",
    "instantaneous_ground_state",
    "kron_embed",
    "linear_ramp",
    "min_gap",
    "oracle_propagate",
    "parity_op",
    "parity_resolved_track",
    "parse_config",
    "product_state",
    "record_observables",
    "spin1_ops",
    "spin_half_ops",
    "total_spin_half",
    "track_spectrum",
]

__version__ = "0.1.0"
