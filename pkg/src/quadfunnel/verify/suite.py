"""Default quantum-number sweep and suite runner."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..specfun import Triple, enumerate_triples
from ..states import (
    NATURAL,
    BoundedQN,
    PhysicalConstants,
    SingularQN,
    StateSpec,
    make_superposition,
)
from .checks import (
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
    random_points,
)
from .finite_diff import FDSpec, sample_points
from .quadrature import QuadratureSpec

__all__ = [
    "SUITES",
    "SweepConfig",
    "SuiteConfig",
    "VerificationReport",
    "default_triples",
    "default_states",
    "run_suite",
]

SUITES = (
    "normalization",
    "schrodinger",
    "hamilton-jacobi",
    "orthogonality",
    "moments",
    "dissipation",
    "continuity",
    "reduction",
    "circulation",
    "forces",
    "all",
)

R2 = 1 / math.sqrt(2)


@dataclass(frozen=True)
class SweepConfig:
    """Quantum-number ranges of the default sweep.

    Negative maxima give an empty sweep.
    """

    n_max: int = 4
    kappa_max: int = 4
    s_max: int = 4
    ells: tuple = (0, 1, -1, 3, -3, 5, -5)
    triple_ell_max: int = 13
    superpositions: bool = True
    orth_s_max: int = 6
    reduction_max: int = 3
    force_ell_max: int = 5

    @classmethod
    def empty(cls):
        """A sweep with no states and no auxiliary checks."""
        return cls(-1, -1, -1, (), 0, False, -1, -1, 0)


@dataclass(frozen=True)
class SuiteConfig:
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    fd: FDSpec = field(default_factory=FDSpec)
    constants: PhysicalConstants = NATURAL
    sweep: SweepConfig = field(default_factory=SweepConfig)
    fd_points: int = 256
    hj_points: int = 500
    force_points: int = 200
    seed: int = 20240917

    def echo(self):
        return {
            "quadrature": asdict(self.quad),
            "fd": asdict(self.fd),
            "constants": asdict(self.constants),
            "sweep": {k: list(v) if isinstance(v, tuple) else v
                      for k, v in asdict(self.sweep).items()},
            "fd_points": self.fd_points,
            "hj_points": self.hj_points,
            "force_points": self.force_points,
            "seed": self.seed,
        }


@dataclass
class VerificationReport:
    config: dict
    results: list

    @property
    def passed(self):
        return sum(1 for r in self.results if r.passed is True)

    @property
    def failed(self):
        return sum(1 for r in self.results if r.passed is False)

    @property
    def skipped(self):
        return sum(1 for r in self.results if r.passed is None)

    def as_dict(self):
        return {
            "config": self.config,
            "results": [r.as_dict() for r in self.results],
            "summary": {"passed": self.passed, "failed": self.failed, "skipped": self.skipped},
        }


def default_triples(ell_max, s_max):
    """Triples admissible with ``l <= s_max``: axial, oscillator and strict ones."""
    out = [Triple(0, 0, 0)]
    out += [Triple(0, e, e) for e in range(1, ell_max + 1)]
    out += [Triple(l, 0, l) for l in range(1, min(ell_max, s_max) + 1)]
    out += [t for t in enumerate_triples(ell_max) if t.l <= s_max]
    return sorted(out, key=lambda t: (t.ell, t.l, t.eps))


def _singular_qns(sw):
    for n in range(sw.n_max + 1):
        for k in range(sw.kappa_max + 1):
            for ell in sw.ells:
                for ts in (1, -1):
                    yield n, k, ell, ts


def _bounded_qns(sw, ell_nonzero=False, both_signs=True):
    triples = default_triples(sw.triple_ell_max, sw.s_max) if sw.s_max >= 0 else []
    for n in range(sw.n_max + 1):
        for s in range(sw.s_max + 1):
            for t in triples:
                if t.l > s or (ell_nonzero and t.ell == 0):
                    continue
                for es in ((1, -1) if both_signs and t.ell else (1,)):
                    yield BoundedQN(n, s, t, es)


def default_states(sw):
    """Pure and superposed states of the sweep, deterministically ordered."""
    states = []
    for fam in ("singular", "em-singular"):
        states += [StateSpec(fam, SingularQN(*q)) for q in _singular_qns(sw)]
    for fam in ("bounded", "em-bounded"):
        states += [StateSpec(fam, qn) for qn in _bounded_qns(sw)]
    if not sw.superpositions:
        return states
    pm = ((R2, R2), (R2, -R2))
    for n in range(sw.n_max + 1):
        for k in range(sw.kappa_max + 1):
            for ell in sw.ells:
                base = SingularQN(n, k, ell, 1)
                if ell > 0:
                    states += [make_superposition("azimuthal", base, c) for c in pm]
                    states += [make_superposition("double", base, c + c) for c in pm]
                states += [make_superposition("axial", base, c) for c in pm]
                states += [make_superposition("em-axial", base, c) for c in pm]
    for qn in _bounded_qns(sw, ell_nonzero=True, both_signs=False):
        states += [make_superposition("bounded-azimuthal", qn, c) for c in pm]
    return states


def _has_closed_q(spec):
    return spec.kind in (None, "bounded-azimuthal")


def _suite_checks(name, cfg, states):
    c = cfg.constants
    sw = cfg.sweep
    out = []
    if name == "normalization":
        for spec in states:
            out.append(check_normalization(spec, cfg.quad, c))
    elif name == "schrodinger":
        pts = sample_points(cfg.fd_points, c.sigma_r)
        for spec in states:
            out += check_schrodinger(spec, cfg.fd, pts, c)
    elif name == "hamilton-jacobi":
        pts = random_points(cfg.hj_points, cfg.seed, c.sigma_r)
        for spec in states:
            if _has_closed_q(spec):
                out.append(check_hamilton_jacobi(spec, pts, c))
    elif name == "orthogonality":
        out += check_orthogonality(sw.orth_s_max, quad=cfg.quad)
    elif name == "moments":
        for spec in states:
            out += check_magnetic_moment(spec, cfg.quad, c)
    elif name == "dissipation":
        from ..states import effective_winding
        for spec in states:
            eff = effective_winding(spec)
            if eff is not None and eff[1] != 0:
                out.append(check_dissipation_average(spec, cfg.quad, c))
                out.append(check_dissipation_half_range(spec, cfg.quad, c))
    elif name == "continuity":
        pts = sample_points(cfg.fd_points, c.sigma_r)
        for spec in states:
            out += check_continuity(spec, cfg.fd, pts, c)
    elif name == "reduction":
        pts = random_points(cfg.hj_points, cfg.seed + 1, c.sigma_r)
        m = sw.reduction_max
        for n in range(m + 1):
            for s in range(m + 1):
                for ell in range(s + 1):
                    out.append(check_oscillator_reduction(n, s, ell, pts, c))
                    out.append(check_oscillator_norm(n, s, ell, c))
    elif name == "circulation":
        if sw.n_max >= 0:
            for ell in range(-3, 4):
                for rho in (0.5, 1.0, 3.0):
                    for theta in (math.pi / 4, math.pi / 2, 2 * math.pi / 3):
                        out.append(check_circulation(ell, rho * c.sigma_r, theta, c))
    elif name == "forces":
        pts = random_points(cfg.force_points, cfg.seed + 2, c.sigma_r)
        for qn in _bounded_qns(SweepConfig(sw.n_max, 0, sw.s_max, (), sw.force_ell_max)):
            out += check_forces(qn, pts, c)
    else:
        raise ValueError(f"unknown suite {name!r}")
    return out


def run_suite(suite_name, config=None):
    """Run a named suite over the default sweep.

    Parameters
    ----------
    suite_name : str
        One of :data:`SUITES`.
    config : SuiteConfig, optional

    Returns
    -------
    VerificationReport
        Results ordered by suite, then by the sweep order.
    """
    if suite_name not in SUITES:
        raise ValueError(f"unknown suite {suite_name!r}; expected one of {', '.join(SUITES)}")
    cfg = config or SuiteConfig()
    states = default_states(cfg.sweep)
    names = SUITES[:-1] if suite_name == "all" else (suite_name,)
    results = []
    with np.errstate(all="ignore"):
        for name in names:
            results += _suite_checks(name, cfg, states)
    echo = cfg.echo()
    echo["suite"] = suite_name
    return VerificationReport(echo, results)
