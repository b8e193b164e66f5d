"""Wave-function families of the quadratic-funnel potential.

Two stationary families are provided, each with an electromagnetic twin:

* ``singular``: axis-singular states with winding ``ell`` and polar flux
  ``tau = +-(kappa + 1)``,
* ``bounded``: regular states labelled by a Pythagorean triple,
* ``em-singular`` / ``em-bounded``: the same states written in the gauge
  where the vortex part of the phase lives in the vector potential.

Every state, superposed or not, is represented internally as a list of
branches ``(coef, ell_b, tau_b)`` sharing one real amplitude ``A(r, theta)``:

.. math:: \\psi = A(r,\\theta) \\sum_b c_b e^{i(\\ell_b\\phi + \\tau_b\\theta)} e^{-iEt/\\hbar}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .specfun import (
    QuantumNumberError,
    Triple,
    laguerre,
    legendre_trig,
    norm_bounded,
    norm_singular,
)

__all__ = [
    "PhysicalConstants",
    "SingularQN",
    "BoundedQN",
    "Superposition",
    "StateSpec",
    "SphericalPoint",
    "FAMILIES",
    "SUPERPOSITION_KINDS",
    "singular_state",
    "bounded_state",
    "make_superposition",
    "branches",
    "amplitude",
    "angular_sum",
    "eval_psi",
    "density",
    "energy",
    "phase_field",
    "effective_winding",
]

FAMILIES = ("singular", "bounded", "em-singular", "em-bounded")
SUPERPOSITION_KINDS = ("azimuthal", "axial", "double", "em-axial", "bounded-azimuthal")
_KIND_FAMILY = {
    "azimuthal": "singular",
    "axial": "singular",
    "double": "singular",
    "em-axial": "em-singular",
    "bounded-azimuthal": "bounded",
}
AXIS_GUARD = 1e-9


@dataclass(frozen=True)
class PhysicalConstants:
    """Physical constants; natural units by default.

    Attributes
    ----------
    hbar, mass, sigma_r : float
        Reduced Planck constant, particle mass and length scale, all > 0.
    charge : float
        Particle charge (signed).
    """

    hbar: float = 1.0
    mass: float = 1.0
    sigma_r: float = 1.0
    charge: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "sigma_r"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.charge == 0:
            raise ValueError("charge must be nonzero")

    @property
    def nu(self):
        return 1.0 / (4.0 * self.sigma_r**2)

    @property
    def mu_B(self):
        return self.charge * self.hbar / (2.0 * self.mass)

    @property
    def energy_unit(self):
        """``hbar**2 / (2 m sigma_r**2)``."""
        return self.hbar**2 / (2.0 * self.mass * self.sigma_r**2)

    @classmethod
    def si(cls, **overrides):
        """Electron in SI units with the Bohr radius as length scale."""
        from scipy import constants as k

        values = dict(hbar=k.hbar, mass=k.m_e, sigma_r=k.physical_constants["Bohr radius"][0],
                      charge=k.e)
        values.update({key: v for key, v in overrides.items() if v is not None})
        return cls(**values)


NATURAL = PhysicalConstants()


def _int(name, value, minimum=None):
    if isinstance(value, bool) or int(value) != value:
        raise QuantumNumberError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise QuantumNumberError(f"{name} must be >= {minimum}, got {value}")
    return value


def _sign(name, value):
    if value in ("+", "-"):
        return 1 if value == "+" else -1
    if value not in (1, -1):
        raise QuantumNumberError(f"{name} must be +1 or -1, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class SingularQN:
    """Quantum numbers of the singular family; ``tau = tau_sign * (kappa + 1)``."""

    n: int
    kappa: int
    ell: int
    tau_sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n", _int("n", self.n, 0))
        object.__setattr__(self, "kappa", _int("kappa", self.kappa, 0))
        object.__setattr__(self, "ell", _int("ell", self.ell))
        object.__setattr__(self, "tau_sign", _sign("tau_sign", self.tau_sign))

    @property
    def tau(self):
        return self.tau_sign * (self.kappa + 1)

    @property
    def degree(self):
        return self.kappa


@dataclass(frozen=True)
class BoundedQN:
    """Quantum numbers of the bounded family.

    The triple houses ``l``, ``eps`` and ``ell``; ``ell_sign`` selects the
    direction of the azimuthal winding.
    """

    n: int
    s: int
    triple: Triple
    ell_sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n", _int("n", self.n, 0))
        object.__setattr__(self, "s", _int("s", self.s, 0))
        object.__setattr__(self, "ell_sign", _sign("ell_sign", self.ell_sign))
        if not isinstance(self.triple, Triple):
            object.__setattr__(self, "triple", Triple(*self.triple))
        if self.triple.l > self.s:
            raise QuantumNumberError(f"l={self.triple.l} exceeds s={self.s}")

    @property
    def l(self):
        return self.triple.l

    @property
    def eps(self):
        return self.triple.eps

    @property
    def ell(self):
        return self.ell_sign * self.triple.ell

    @property
    def tau(self):
        return 0

    @property
    def degree(self):
        return self.s


@dataclass(frozen=True)
class Superposition:
    """Superposition record: a `kind` and its complex coefficients."""

    kind: str
    c: tuple

    def __post_init__(self):
        if self.kind not in SUPERPOSITION_KINDS:
            raise ValueError(f"unknown superposition kind {self.kind!r}")
        c = tuple(complex(x) for x in self.c)
        want = 4 if self.kind == "double" else 2
        if len(c) != want:
            raise ValueError(f"{self.kind} superposition needs {want} coefficients")
        if self.kind == "double":
            norm = (abs(c[0]) ** 2 + abs(c[1]) ** 2) * (abs(c[2]) ** 2 + abs(c[3]) ** 2)
        else:
            norm = sum(abs(x) ** 2 for x in c)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"coefficients not normalized (norm {norm!r})")
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class StateSpec:
    """Complete specification of a state.

    Parameters
    ----------
    family : {'singular', 'bounded', 'em-singular', 'em-bounded'}
    base : SingularQN or BoundedQN
    superposition : Superposition, optional
    """

    family: str
    base: object
    superposition: Superposition | None = None
    _branches: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        want = SingularQN if self.family.endswith("singular") else BoundedQN
        if not isinstance(self.base, want):
            raise QuantumNumberError(f"family {self.family} needs {want.__name__}")
        sup = self.superposition
        if sup is not None:
            if _KIND_FAMILY[sup.kind] != self.family:
                raise ValueError(f"{sup.kind} superposition is not defined for the {self.family} family")
            if sup.kind in ("azimuthal", "double", "bounded-azimuthal") and self.base.ell == 0:
                raise QuantumNumberError(f"{sup.kind} superposition needs ell != 0")
        object.__setattr__(self, "_branches", _build_branches(self))

    @property
    def is_pure(self):
        return self.superposition is None

    @property
    def singular_type(self):
        return self.family.endswith("singular")

    @property
    def is_em(self):
        return self.family.startswith("em-")

    @property
    def kind(self):
        return None if self.superposition is None else self.superposition.kind

    def summary(self):
        """Compact text label used in reports."""
        b = self.base
        if self.singular_type:
            core = f"n={b.n},kappa={b.kappa},ell={b.ell},tau={b.tau:+d}"
        else:
            core = f"n={b.n},s={b.s},triple=({b.l},{b.eps},{b.triple.ell}),ell={b.ell:+d}"
        text = f"{self.family}[{core}]"
        if self.superposition is not None:
            cs = ",".join(_fmt_complex(x) for x in self.superposition.c)
            text += f"+{self.superposition.kind}({cs})"
        return text


def _fmt_complex(z):
    if z.imag == 0:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}j"


def _build_branches(spec):
    b = spec.base
    tau = b.tau
    ell = 0 if spec.is_em else b.ell
    sup = spec.superposition
    if sup is None:
        return ((1 + 0j, ell, tau),)
    c = sup.c
    if sup.kind == "azimuthal" or sup.kind == "bounded-azimuthal":
        return ((c[0], b.ell, tau), (c[1], -b.ell, tau))
    if sup.kind in ("axial", "em-axial"):
        return ((c[0], ell, tau), (c[1], ell, -tau))
    # double: azimuthal pair (c1, c2) times axial pair (c3, c4)
    return ((c[0] * c[2], b.ell, tau), (c[0] * c[3], b.ell, -tau),
            (c[1] * c[2], -b.ell, tau), (c[1] * c[3], -b.ell, -tau))


def branches(spec):
    """Branch list ``((coef, ell_b, tau_b), ...)`` of a state."""
    return spec._branches


class SphericalPoint(NamedTuple):
    """Point (or broadcastable arrays of points) in spherical coordinates."""

    r: object
    theta: object
    phi: object


def singular_state(n, kappa, ell, tau_sign=1, em=False):
    """Pure singular (or em-singular) state."""
    return StateSpec("em-singular" if em else "singular", SingularQN(n, kappa, ell, tau_sign))


def bounded_state(n, s, triple, ell_sign=1, em=False):
    """Pure bounded (or em-bounded) state for a triple ``(l, eps, ell)``."""
    if not isinstance(triple, Triple):
        triple = Triple(*triple)
    return StateSpec("em-bounded" if em else "bounded", BoundedQN(n, s, triple, ell_sign))


def make_superposition(kind, base, coefficients):
    """Superposed state of the given `kind` built on `base` quantum numbers.

    Branch order follows the coefficient order: ``c1`` carries ``+ell``
    (or ``+tau``), ``c2`` the reversed winding. For ``double`` the four
    coefficients are an azimuthal pair ``(c1, c2)`` and an axial pair
    ``(c3, c4)``.

    Parameters
    ----------
    kind : str
        One of ``azimuthal``, ``axial``, ``double``, ``em-axial``,
        ``bounded-azimuthal``.
    base : SingularQN or BoundedQN
    coefficients : sequence of complex

    Returns
    -------
    StateSpec
    """
    if kind not in _KIND_FAMILY:
        raise ValueError(f"unknown superposition kind {kind!r}")
    return StateSpec(_KIND_FAMILY[kind], base, Superposition(kind, tuple(coefficients)))


def _check_point(spec, theta):
    if spec.singular_type:
        t = np.asarray(theta)
        if np.any(np.minimum(t, np.pi - t) < AXIS_GUARD):
            raise ValueError("singular-family states are undefined on the polar axis")


def amplitude(spec, c, r, theta):
    """Real amplitude :math:`A(r, \\theta)` shared by all branches.

    Singular type: :math:`N r^\\kappa L_n^{(\\kappa+1/2)}(2\\nu r^2) e^{-\\nu r^2}/\\sqrt{\\sin\\theta}`.
    Bounded type: :math:`N r^s L_n^{(s+1/2)}(2\\nu r^2) P_s^l(\\cos\\theta) e^{-\\nu r^2}`.
    Dtype of `r`, `theta` is preserved.
    """
    r = np.asarray(r)
    if not np.issubdtype(r.dtype, np.floating):
        r = r.astype(float)
    theta = np.asarray(theta, dtype=np.result_type(r, np.asarray(theta).dtype, float))
    b = spec.base
    x = r * r / (2 * c.sigma_r**2)
    k = b.degree
    radial = r**k * laguerre(b.n, k + 0.5, x) * np.exp(-x / 2)
    if spec.singular_type:
        return norm_singular(b.n, b.kappa, c.sigma_r) * radial / np.sqrt(np.sin(theta))
    p = legendre_trig(b.s, b.l, np.cos(theta), np.sin(theta))
    return norm_bounded(b.n, b.s, b.l, c.sigma_r) * radial * p


def angular_sum(spec, theta, phi):
    """Branch sum :math:`S = \\sum_b c_b e^{i(\\ell_b\\phi + \\tau_b\\theta)}`."""
    theta = np.asarray(theta)
    phi = np.asarray(phi)
    out = 0
    for coef, ell_b, tau_b in spec._branches:
        if coef != 0:
            out = out + coef * np.exp(1j * (ell_b * phi + tau_b * theta))
    if isinstance(out, int):
        out = np.zeros(np.broadcast(theta, phi).shape, dtype=complex)
    return out


def energy(spec, c=NATURAL):
    """Eigenvalue ``hbar**2/(2 m sigma**2) * (2n + degree + 3/2)``."""
    b = spec.base
    return c.energy_unit * (2 * b.n + b.degree + 1.5)


def eval_psi(spec, c, p, t=0.0):
    """Complex wave function at point(s) `p` and time `t`.

    Parameters
    ----------
    spec : StateSpec
    c : PhysicalConstants
    p : SphericalPoint or tuple ``(r, theta, phi)``
        Scalars or broadcastable arrays.
    t : float

    Returns
    -------
    complex or ndarray of complex

    Raises
    ------
    ValueError
        If a singular-type state is evaluated on the polar axis.
    """
    r, theta, phi = p
    _check_point(spec, theta)
    psi = amplitude(spec, c, r, theta) * angular_sum(spec, theta, phi)
    if t:
        psi = psi * np.exp(-1j * energy(spec, c) * t / c.hbar)
    return psi[()] if isinstance(psi, np.ndarray) else psi


def density(spec, c, p):
    """Probability density :math:`|\\psi|^2 = A^2 |S|^2`."""
    r, theta, phi = p
    _check_point(spec, theta)
    a = amplitude(spec, c, r, theta)
    s = angular_sum(spec, theta, phi)
    out = a * a * (s.real**2 + s.imag**2)
    return out[()]


def phase_field(spec, c, p, t=0.0):
    """Phase ``ell*phi + tau*theta - E t / hbar`` of a pure state.

    For em-* families the ``ell*phi`` term is absent.
    """
    if not spec.is_pure:
        raise ValueError("phase_field is defined for pure states only")
    r, theta, phi = p
    _, ell_b, tau_b = spec._branches[0]
    return ell_b * np.asarray(phi) + tau_b * np.asarray(theta) - energy(spec, c) * t / c.hbar


def effective_winding(spec):
    """Effective ``(ell, tau)`` of the probability flux, or ``None``.

    Pure states return their own canonical winding. Superpositions whose
    nonzero coefficients all have equal magnitude return the mean winding
    (``ell = 0`` for azimuthal pairs, ``tau = 0`` for axial pairs). Other
    superpositions have no effective winding.
    """
    live = [(abs(cb), lb, tb) for cb, lb, tb in spec._branches if cb != 0]
    mags = [m for m, _, _ in live]
    if max(mags) - min(mags) > 1e-12 * max(mags):
        return None
    k = len(live)
    ell = sum(lb for _, lb, _ in live) / k
    tau = sum(tb for _, _, tb in live) / k
    return (int(round(ell)) if float(ell).is_integer() else ell,
            int(round(tau)) if float(tau).is_integer() else tau)
