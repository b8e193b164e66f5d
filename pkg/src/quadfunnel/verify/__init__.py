"""Numerical verification engine: quadrature, finite differences, checks and suites."""

from .checks import (
    CheckResult,
    check_circulation,
    check_continuity,
    check_dissipation_average,
    check_dissipation_half_range,
    check_forces,
    check_hamilton_jacobi,
    check_magnetic_moment,
    check_normalization,
    check_orthogonality,
    check_oscillator_norm,
    check_oscillator_reduction,
    check_schrodinger,
    expected_moment,
    make_result,
    oscillator_psi,
    random_points,
)
from .finite_diff import FDSpec, sample_points
from .quadrature import QuadratureSpec, gauss_legendre_rule, radial_rule
from .suite import SUITES, SuiteConfig, SweepConfig, VerificationReport, default_states, run_suite

__all__ = [
    "CheckResult",
    "FDSpec",
    "QuadratureSpec",
    "SUITES",
    "SuiteConfig",
    "SweepConfig",
    "VerificationReport",
    "check_circulation",
    "check_continuity",
    "check_dissipation_average",
    "check_dissipation_half_range",
    "check_forces",
    "check_hamilton_jacobi",
    "check_magnetic_moment",
    "check_normalization",
    "check_orthogonality",
    "check_oscillator_norm",
    "check_oscillator_reduction",
    "check_schrodinger",
    "default_states",
    "expected_moment",
    "gauss_legendre_rule",
    "make_result",
    "oscillator_psi",
    "radial_rule",
    "random_points",
    "run_suite",
    "sample_points",
]
