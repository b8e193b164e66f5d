"""Exact stationary states of the quadratic funnel potential and their verification."""

from .specfun import (
    QuantumNumberError,
    Triple,
    assoc_legendre,
    classify_angular_family,
    enumerate_triples,
    laguerre,
    modified_sph_harm,
    norm_bounded,
    norm_singular,
)
from .states import (
    NATURAL,
    BoundedQN,
    PhysicalConstants,
    SingularQN,
    SphericalPoint,
    StateSpec,
    Superposition,
    bounded_state,
    density,
    energy,
    eval_psi,
    make_superposition,
    phase_field,
    singular_state,
)

__version__ = "0.1.0"

__all__ = [
    "NATURAL",
    "BoundedQN",
    "PhysicalConstants",
    "QuantumNumberError",
    "SingularQN",
    "SphericalPoint",
    "StateSpec",
    "Superposition",
    "Triple",
    "assoc_legendre",
    "bounded_state",
    "classify_angular_family",
    "density",
    "energy",
    "enumerate_triples",
    "eval_psi",
    "laguerre",
    "make_superposition",
    "modified_sph_harm",
    "norm_bounded",
    "norm_singular",
    "phase_field",
    "singular_state",
]
