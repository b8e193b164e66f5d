"""Classical field quantities attached to a state.

Velocity and current of the probability flux, vector and scalar potentials,
the quantum potential and the Hamilton-Jacobi energy split, dissipation
sources, forces, circulation, characteristics and streamline tracing.

Vectors are returned as :class:`VectorValue` in the local orthonormal
spherical basis ``(e_r, e_theta, e_phi)``. All functions broadcast over
array-valued points.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .states import (
    NATURAL,
    AXIS_GUARD,
    PhysicalConstants,
    SphericalPoint,
    amplitude,
    branches,
    density,
    effective_winding,
    energy,
)

__all__ = [
    "VectorValue",
    "EnergyBundle",
    "Forces",
    "Characteristics",
    "Streamline",
    "NoClosedFormError",
    "velocity",
    "state_velocity",
    "vector_potential",
    "potential_params",
    "scalar_potential",
    "state_potential",
    "quantum_potential",
    "kinetic_energy",
    "energy_split",
    "dissipation_density",
    "current_density",
    "forces",
    "circulation",
    "magnetic_charge",
    "characteristics",
    "trace_streamline",
    "to_cartesian",
    "compton_cutoff",
]


class NoClosedFormError(ValueError):
    """The requested quantity has no closed form for this state."""


class VectorValue(NamedTuple):
    """Vector in the spherical basis ``(e_r, e_theta, e_phi)``."""

    v_r: object
    v_theta: object
    v_phi: object

    def __add__(self, other):
        return VectorValue(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return VectorValue(*(a - b for a, b in zip(self, other)))

    def scale(self, k):
        return VectorValue(*(k * a for a in self))

    def norm(self):
        return np.sqrt(sum(np.square(a) for a in self))


class EnergyBundle(NamedTuple):
    T: object
    U: object
    Q: object
    V: object
    E: float


class Forces(NamedTuple):
    F_U: VectorValue
    F_Q: VectorValue
    F_Q_rot: VectorValue
    a_c: VectorValue


class Characteristics(NamedTuple):
    xi: object
    eta: object
    omega: object
    zeta: object


class Streamline(NamedTuple):
    points: list
    step: float
    closed: bool

    def arrays(self):
        """``(r, theta, phi)`` arrays; ``phi`` is unwrapped (not reduced mod 2 pi)."""
        return tuple(np.array([getattr(p, k) for p in self.points]) for k in ("r", "theta", "phi"))


def _f(x):
    x = np.asarray(x)
    return x if np.issubdtype(x.dtype, np.floating) else x.astype(float)


def _off_axis(theta):
    t = np.asarray(theta)
    if np.any(np.minimum(t, np.pi - t) < AXIS_GUARD):
        raise ValueError("point lies on the polar axis")


def _zeros(p):
    r, theta, phi = p
    return np.zeros(np.broadcast(np.asarray(r), np.asarray(theta), np.asarray(phi)).shape)


def velocity(ell, tau, c, p):
    """Probability-flux velocity for winding ``(ell, tau)``.

    .. math:: \\langle v\\rangle = \\frac{\\hbar}{m}\\left(\\frac{\\tau}{r} e_\\theta
              + \\frac{\\ell}{r\\sin\\theta} e_\\phi\\right)
    """
    r, theta, phi = p
    _off_axis(theta)
    r = _f(r)
    k = c.hbar / c.mass
    z = _zeros(p)
    return VectorValue(z, z + k * tau / r, z + k * ell / (r * np.sin(theta)))


def vector_potential(ell, c, p):
    """Vector potential ``A = -hbar ell / (q r sin theta) e_phi``."""
    r, theta, phi = p
    _off_axis(theta)
    z = _zeros(p)
    return VectorValue(z, z, z - c.hbar * ell / (c.charge * np.asarray(r) * np.sin(theta)))


def current_density(spec, c, p):
    """Probability current ``J = q f <v>`` resolved over branches.

    .. math:: J = q\\frac{\\hbar}{m} A^2\\,\\mathrm{Re}\\Big[S^*\\sum_b c_b e_b
              \\Big(\\frac{\\tau_b}{r} e_\\theta + \\frac{\\ell_b}{\\rho} e_\\phi\\Big)\\Big]

    For equal-magnitude coefficients this equals ``q * density * velocity``
    with the effective winding.
    """
    r, theta, phi = p
    _off_axis(theta)
    r, theta, phi = _f(r), _f(theta), _f(phi)
    a2 = amplitude(spec, c, r, theta) ** 2
    s = 0j
    s_tau = 0j
    s_ell = 0j
    for coef, lb, tb in branches(spec):
        e = coef * np.exp(1j * (lb * phi + tb * theta))
        s = s + e
        s_tau = s_tau + tb * e
        s_ell = s_ell + lb * e
    k = c.charge * c.hbar / c.mass * a2
    j_t = k * np.real(np.conj(s) * s_tau) / r
    j_p = k * np.real(np.conj(s) * s_ell) / (r * np.sin(theta))
    return VectorValue(_zeros(p), j_t + _zeros(p), j_p + _zeros(p))


def state_velocity(spec, c, p):
    """Flux velocity of a state.

    Uses the effective winding when it exists, else ``J / (q f)`` (NaN on
    density nodes).
    """
    eff = effective_winding(spec)
    if eff is not None:
        return velocity(eff[0], eff[1], c, p)
    j = current_density(spec, c, p)
    f = c.charge * density(spec, c, p)
    with np.errstate(invalid="ignore", divide="ignore"):
        return VectorValue(*(np.where(f != 0, comp / np.where(f != 0, f, 1), np.nan) for comp in j))


def potential_params(spec):
    """``(p1, p2)`` of the funnel potential for a state's family."""
    b = spec.base
    if spec.singular_type:
        return 4 * b.kappa + 3, 4 * b.ell**2 - 1
    return 0, 4 * b.eps**2


def scalar_potential(p1, p2, c, p):
    """Two-parameter quadratic funnel potential.

    .. math:: U = \\frac{\\hbar^2}{8m\\sigma_r^2}\\Big[\\frac{r^2}{\\sigma_r^2}
              - p_1\\frac{\\sigma_r^2}{r^2} - p_2\\frac{\\sigma_r^2}{r^2\\sin^2\\theta}\\Big]
    """
    r, theta, phi = p
    r = np.asarray(r)
    s2 = c.sigma_r**2
    out = r * r / s2 - p1 * s2 / (r * r)
    if p2 != 0:
        _off_axis(theta)
        out = out - p2 * s2 / (r * np.sin(theta)) ** 2
    return (c.hbar**2 / (8 * c.mass * s2) * out + _zeros(p))[()]


def state_potential(spec, c, p):
    """External potential ``U`` for a state's family."""
    return scalar_potential(*potential_params(spec), c, p)


def quantum_potential(spec, c, p):
    """Closed-form quantum potential ``Q``.

    Singular type:

    .. math:: Q = -\\frac{\\hbar^2}{8m\\sigma_r^2}\\Big\\{\\frac{r^2}{\\sigma_r^2}
              + [4\\kappa(\\kappa+1)+1]\\frac{\\sigma_r^2}{r^2}
              + \\frac{\\sigma_r^2}{r^2\\sin^2\\theta} - 8n - 4\\kappa - 6\\Big\\}

    Bounded type:

    .. math:: Q = -\\frac{\\hbar^2}{8m\\sigma_r^2}\\Big(\\frac{r^2}{\\sigma_r^2}
              + \\frac{4 l^2\\sigma_r^2}{\\rho^2} - 8n - 4s - 6\\Big)

    For the bounded-azimuthal superposition ``Q = E - U``.

    Raises
    ------
    NoClosedFormError
        For other superpositions.
    """
    r, theta, phi = p
    _off_axis(theta)
    kind = spec.kind
    if kind == "bounded-azimuthal":
        return (energy(spec, c) - state_potential(spec, c, p))[()]
    if kind is not None:
        raise NoClosedFormError(f"no closed form for Q of the {kind} superposition")
    b = spec.base
    r = np.asarray(r)
    s2 = c.sigma_r**2
    pre = -c.hbar**2 / (8 * c.mass * s2)
    if spec.singular_type:
        k = b.kappa
        inner = (r * r / s2 + (4 * k * (k + 1) + 1) * s2 / (r * r)
                 + s2 / (r * np.sin(theta)) ** 2 - 8 * b.n - 4 * k - 6)
    else:
        inner = r * r / s2 + 4 * b.l**2 * s2 / (r * np.sin(theta)) ** 2 - 8 * b.n - 4 * b.s - 6
    return (pre * inner + _zeros(p))[()]


def kinetic_energy(spec, c, p):
    """Kinetic term ``T = m <v>^2 / 2`` of the Hamilton-Jacobi split.

    Gauge invariant, so em-* states carry the full winding ``ell``.
    """
    r, theta, phi = p
    _off_axis(theta)
    kind = spec.kind
    if kind == "bounded-azimuthal":
        return _zeros(p)[()]
    if kind is not None:
        raise NoClosedFormError(f"no closed form for T of the {kind} superposition")
    b = spec.base
    r = np.asarray(r)
    rho2 = (r * np.sin(theta)) ** 2
    out = b.ell**2 / rho2
    if spec.singular_type:
        out = out + (b.kappa + 1) ** 2 / (r * r)
    return (c.hbar**2 / (2 * c.mass) * out + _zeros(p))[()]


def energy_split(spec, c, p):
    """Hamilton-Jacobi split ``E = T + U + Q``.

    Returns
    -------
    EnergyBundle
        ``V = U + Q`` exactly.
    """
    t = kinetic_energy(spec, c, p)
    u = state_potential(spec, c, p)
    q = quantum_potential(spec, c, p)
    return EnergyBundle(t, u, q, u + q, energy(spec, c))


def dissipation_density(tau, c, p):
    """Dissipation source ``Q1 = hbar tau cot(theta) / (m r^2)``."""
    r, theta, phi = p
    _off_axis(theta)
    r = np.asarray(r)
    return (c.hbar * tau / (c.mass * r * r) / np.tan(theta) + _zeros(p))[()]


def _e_rho(theta):
    return np.sin(theta), np.cos(theta)


def forces(qn, c, p):
    """Force balance of a bounded state.

    Parameters
    ----------
    qn : BoundedQN or StateSpec
        Bounded-family quantum numbers.

    Returns
    -------
    Forces
        ``F_U = -grad U``, ``F_Q = -F_U``, the reduced pressure force
        ``F_Q_rot = F_Q - hbar^2 ell^2 / (m rho^3) e_rho`` and the centripetal
        acceleration ``a_c = -hbar^2 ell^2 / (m^2 rho^3) e_rho``.
    """
    base = getattr(qn, "base", qn)
    if getattr(qn, "family", "bounded").endswith("singular") or not hasattr(base, "eps"):
        raise ValueError("forces are defined for the bounded family only")
    r, theta, phi = p
    _off_axis(theta)
    r = _f(r)
    z = _zeros(p)
    rho = r * np.sin(theta)
    sr, st = _e_rho(theta)
    h2m = c.hbar**2 / c.mass
    radial = h2m * r / (4 * c.sigma_r**4)
    axial_u = h2m * base.eps**2 / rho**3
    f_u = VectorValue(z - radial - axial_u * sr, z - axial_u * st, z)
    f_q = VectorValue(-f_u.v_r, -f_u.v_theta, -f_u.v_phi)
    rot = h2m * base.ell**2 / rho**3
    f_q_rot = VectorValue(f_q.v_r - rot * sr, f_q.v_theta - rot * st, z)
    acc = rot / c.mass
    a_c = VectorValue(z - acc * sr, z - acc * st, z)
    return Forces(f_u, f_q, f_q_rot, a_c)


def to_cartesian(vec, theta, phi):
    """Cartesian components of a spherical-basis vector."""
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    vr, vt, vp = vec
    return (vr * st * cp + vt * ct * cp - vp * sp,
            vr * st * sp + vt * ct * sp + vp * cp,
            vr * ct - vt * st)


def circulation(ell, c, rho, theta, n_segments=64):
    """Circulation of the mean momentum around the axis.

    Integrates ``m <v> . dl`` over the loop ``r sin(theta) = rho`` at fixed
    polar angle with the periodic trapezoid rule on the Cartesian tangent.

    Returns
    -------
    numeric, analytic : float
        Loop integral and ``2 pi hbar ell``.
    """
    if not rho > 0:
        raise ValueError("loop radius must be positive")
    r = rho / math.sin(theta)
    phi = 2 * np.pi * np.arange(n_segments) / n_segments
    p = SphericalPoint(np.full_like(phi, r), np.full_like(phi, theta), phi)
    # the polar flux component is orthogonal to the loop; keep a nonzero tau
    v = velocity(ell, 1, c, p)
    vx, vy, vz = to_cartesian(v, theta, phi)
    tx, ty = -rho * np.sin(phi), rho * np.cos(phi)
    integrand = c.mass * (vx * tx + vy * ty)
    numeric = float(np.sum(integrand) * (2 * np.pi / n_segments))
    return numeric, 2 * math.pi * c.hbar * ell


def magnetic_charge(ell, c):
    """Dirac-string magnetic charge ``q_m = 2 pi hbar ell / q``."""
    return 2 * math.pi * c.hbar * ell / c.charge


def compton_cutoff(ell, c, speed_of_light=1.0):
    """Relativistic cutoff radius ``rho_c = lambda_c |ell|`` with ``lambda_c = hbar/(m c)``."""
    return c.hbar / (c.mass * speed_of_light) * abs(ell)


def characteristics(ell, tau, c, p, t=0.0):
    """Characteristic invariants of the flux field.

    Returns
    -------
    Characteristics
        ``xi = phi + (ell/tau) cot(theta)``, ``eta = theta - omega t``,
        ``omega = hbar tau / (m r^2)`` and
        ``zeta = phi - hbar ell t / (m r^2 sin^2 theta)``.
    """
    if tau == 0:
        raise ValueError("xi requires tau != 0")
    r, theta, phi = p
    _off_axis(theta)
    r = _f(r)
    omega = c.hbar * tau / (c.mass * r * r)
    xi = phi + (ell / tau) / np.tan(theta)
    eta = theta - omega * t
    zeta = phi - c.hbar * ell * t / (c.mass * (r * np.sin(theta)) ** 2)
    return Characteristics(xi, eta, omega, zeta)


def trace_streamline(ell, tau, c, start, step=None, n_steps=10000, theta_min=1e-3):
    """Trace a flux line on the sphere through `start`.

    Classical fixed-step RK4 in arclength ``s`` of

    .. math:: \\frac{d\\theta}{ds} = \\frac{v_\\theta}{r|v|},\\quad
              \\frac{d\\phi}{ds} = \\frac{v_\\phi}{r\\sin\\theta\\,|v|}

    Parameters
    ----------
    step : float, optional
        Arclength step; default ``1e-3 * r``. Negative values are rejected;
        trace backwards by flipping the signs of `ell` and `tau`.
    n_steps : int
        Maximum number of steps.
    theta_min : float
        Integration stops once ``theta`` leaves ``(theta_min, pi - theta_min)``.

    Returns
    -------
    Streamline
        ``closed`` is set when a full revolution in ``phi`` returns to the
        starting point (latitude circles).
    """
    if ell == 0 and tau == 0:
        raise ValueError("zero velocity field has no streamlines")
    r = float(start.r)
    if step is None:
        step = 1e-3 * r
    if not step > 0:
        raise ValueError("step must be positive")
    theta0 = float(start.theta)
    if not theta_min < theta0 < math.pi - theta_min:
        raise ValueError("start point too close to the axis")
    # the speed prefactor hbar/(m r) cancels in the unit direction
    def rhs(th):
        s = math.sin(th)
        vt, vp = tau, ell / s
        speed = math.hypot(vt, vp)
        return vt / (r * speed), vp / (r * s * speed)

    th, ph = theta0, float(start.phi)
    pts = [SphericalPoint(r, th, ph)]
    closed = False
    for _ in range(n_steps):
        k1 = rhs(th)
        k2 = rhs(th + 0.5 * step * k1[0])
        k3 = rhs(th + 0.5 * step * k2[0])
        k4 = rhs(th + step * k3[0])
        th += step / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        ph += step / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        if not theta_min < th < math.pi - theta_min:
            break
        pts.append(SphericalPoint(r, th, ph))
        if tau == 0 and abs(ph - float(start.phi)) >= 2 * math.pi:
            closed = True
            break
    return Streamline(pts, step, closed)
