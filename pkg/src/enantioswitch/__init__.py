"""Simulator for a two-stage enantio-selective optical switch.

A three-level cyclic discriminator separates the two mirror-image forms of a
chiral molecule by their total drive loop phase, and a six-level dual-path
converter then carries the excited form over to its mirror image through a
pair of dark states.  The package provides the domain types, pulse-sequence
factories, Schrodinger propagators (adaptive plus an independent
matrix-exponential cross-check), eigenvalue-track and dark-state analysis,
and a CSV-emitting command line front end.
"""

from .core import (
    ChirpSpec,
    Coupling,
    DriveScheme,
    MoleculeTimescales,
    PulseEnvelope,
    StateVector,
    build_converter_hamiltonian,
    build_discriminator_hamiltonian,
    build_hamiltonian,
    build_hamiltonians,
    chiral_basis_transform,
    enantiomer_flip,
    evaluate_coupling,
    gaussian_envelope,
    time_reversed,
    total_phase,
    wavenumber_to_angular_frequency,
)
from .errors import (
    ConfigError,
    ConfigKeyError,
    ConfigSyntaxError,
    DegenerateInputError,
    EnantioSwitchError,
    GridMismatchError,
    IntegrationFailureError,
    InvalidParameterError,
    SchemeShapeError,
)
from .propagation import (
    IntegratorConfig,
    Trajectory,
    piecewise_exponential_propagate,
    populations,
    propagate,
    sample_times,
)
from .schemes import (
    SwitchResult,
    TimescaleCheck,
    TimescaleReport,
    default_molecule_timescales,
    make_converter,
    make_discriminator,
    run_two_step,
    validate_timescales,
)
from .spectral import (
    Crossing,
    DarkBasis,
    EigenTrack,
    adiabatic_overlap,
    dark_states,
    detect_crossings,
    instantaneous_spectrum,
)
from .cli import RunConfig, emit_config, emit_trajectory, parse_config, run_sweep

__version__ = "0.1.0"

__all__ = [
    "ChirpSpec",
    "Coupling",
    "Crossing",
    "DarkBasis",
    "DriveScheme",
    "EigenTrack",
    "IntegratorConfig",
    "MoleculeTimescales",
    "PulseEnvelope",
    "RunConfig",
    "StateVector",
    "SwitchResult",
    "TimescaleCheck",
    "TimescaleReport",
    "Trajectory",
    "adiabatic_overlap",
    "build_converter_hamiltonian",
    "build_discriminator_hamiltonian",
    "build_hamiltonian",
    "build_hamiltonians",
    "chiral_basis_transform",
    "dark_states",
    "default_molecule_timescales",
    "detect_crossings",
    "emit_config",
    "emit_trajectory",
    "enantiomer_flip",
    "evaluate_coupling",
    "gaussian_envelope",
    "instantaneous_spectrum",
    "make_converter",
    "make_discriminator",
    "parse_config",
    "piecewise_exponential_propagate",
    "populations",
    "propagate",
    "run_sweep",
    "run_two_step",
    "sample_times",
    "time_reversed",
    "total_phase",
    "validate_timescales",
    "wavenumber_to_angular_frequency",
    "ConfigError",
    "ConfigKeyError",
    "ConfigSyntaxError",
    "DegenerateInputError",
    "EnantioSwitchError",
    "GridMismatchError",
    "IntegrationFailureError",
    "InvalidParameterError",
    "SchemeShapeError",
]
