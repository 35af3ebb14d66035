"""Teleportation witness and fully entangled fraction for d x d states."""

from .estimators import FullyEntangledFraction, TeleportationWitness, check_states
from .fef import (
    FefEstimate,
    FefMethod,
    OptimizerConfig,
    continuity_bound,
    fef,
    fef_exact_2x2,
    fef_optimize,
    fef_overlap,
    fef_sample,
)
from .states import (
    DensityMatrix,
    StateValidationError,
    discord_state,
    generalized_werner,
    isotropic,
    max_entangled_state,
    mems,
    mix,
    random_density,
    random_separable,
)
from .witness import (
    LocalDecomposition,
    Verdict,
    WitnessReport,
    classify,
    gellmann_decomposition,
    isotropic_expectation,
    mems_expectation,
    pauli_decomposition,
    projector_decomposition,
    werner_expectation,
    witness_expectation,
    witness_operator,
)

__version__ = "0.1.0"

__all__ = [
    "FullyEntangledFraction",
    "TeleportationWitness",
    "check_states",
    "FefEstimate",
    "FefMethod",
    "OptimizerConfig",
    "continuity_bound",
    "fef",
    "fef_exact_2x2",
    "fef_optimize",
    "fef_overlap",
    "fef_sample",
    "DensityMatrix",
    "StateValidationError",
    "discord_state",
    "generalized_werner",
    "isotropic",
    "max_entangled_state",
    "mems",
    "mix",
    "random_density",
    "random_separable",
    "LocalDecomposition",
    "Verdict",
    "WitnessReport",
    "classify",
    "gellmann_decomposition",
    "isotropic_expectation",
    "mems_expectation",
    "pauli_decomposition",
    "projector_decomposition",
    "werner_expectation",
    "witness_expectation",
    "witness_operator",
]
