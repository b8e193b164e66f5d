"""Finite-difference operators in spherical coordinates.

Second-order central stencils on ``(r, theta, phi)`` evaluated in
``np.longdouble``. Steps scale with the local length of each coordinate
direction so that the relative truncation error is uniform near the axis::

    h_r     = h * min(r, sigma_r)
    h_theta = h * sin(theta)
    h_phi   = h * min(rho / sigma_r, 1) / max(1, |ell|)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from ..fields import current_density, state_potential
from ..states import amplitude, angular_sum, branches, effective_winding, energy

__all__ = [
    "FDSpec",
    "sample_points",
    "local_steps",
    "stencil",
    "laplacian",
    "schrodinger_residual",
    "continuity_residual",
    "convergence_order",
    "has_polar_flux",
]

LD = np.longdouble


@dataclass(frozen=True)
class FDSpec:
    """Finite-difference configuration.

    Attributes
    ----------
    h : float
        Finest relative step, in units of ``sigma_r``.
    refinement_levels : int
        Number of levels ``h * 2**k``, ``k = levels-1, ..., 0``, used for the
        convergence-order estimate.
    """

    h: float = 1e-3
    refinement_levels: int = 3

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("h must be positive")
        if self.refinement_levels < 2:
            raise ValueError("refinement_levels must be >= 2")

    def steps(self):
        """Steps from coarsest to finest."""
        return [self.h * 2.0**k for k in range(self.refinement_levels - 1, -1, -1)]


def sample_points(count=256, sigma_r=1.0, r_range=(0.2, 5.0), theta_margin=0.15):
    """Deterministic Halton points over the default sampling box.

    ``r`` in ``sigma_r * r_range``, ``theta`` in ``[margin, pi - margin]``,
    ``phi`` in ``[0, 2 pi)``.
    """
    u = qmc.Halton(d=3, scramble=False).random(count + 1)[1:]
    r = sigma_r * (r_range[0] + (r_range[1] - r_range[0]) * u[:, 0])
    theta = theta_margin + (np.pi - 2 * theta_margin) * u[:, 1]
    phi = 2 * np.pi * u[:, 2]
    return r, theta, phi


def _winding_scale(spec):
    return max([1] + [abs(lb) for _, lb, _ in branches(spec)] + [abs(spec.base.ell)])


def local_steps(h, r, theta, sigma_r, ell_scale=1):
    """Local step sizes ``(h_r, h_theta, h_phi)`` at the given points."""
    r = np.asarray(r, dtype=LD)
    theta = np.asarray(theta, dtype=LD)
    sigma_r = LD(sigma_r)
    h = LD(h)
    rho = r * np.sin(theta)
    hr = h * np.minimum(r, sigma_r)
    ht = h * np.sin(theta)
    hp = h * np.minimum(rho / sigma_r, 1) / max(1, ell_scale)
    return hr, ht, hp


def stencil(func, r, theta, phi, hr, ht, hp):
    """Evaluate `func` on the 7-point stencil.

    Steps are first made exactly representable (``(x + h) - x``).

    Returns
    -------
    values : ndarray, shape (7, P)
        Order: centre, r+, r-, theta+, theta-, phi+, phi-.
    steps : tuple
        Effective ``(hr, ht, hp)``.
    """
    r = np.asarray(r, dtype=LD)
    theta = np.asarray(theta, dtype=LD)
    phi = np.asarray(phi, dtype=LD)
    hr = (r + hr) - r
    ht = (theta + ht) - theta
    hp = (phi + hp) - phi
    R = np.concatenate([r, r + hr, r - hr, r, r, r, r])
    T = np.concatenate([theta, theta, theta, theta + ht, theta - ht, theta, theta])
    P = np.concatenate([phi, phi, phi, phi, phi, phi + hp, phi - hp])
    return func(R, T, P).reshape(7, -1), (hr, ht, hp)


def laplacian(v, r, theta, steps):
    """Spherical Laplacian and ``d/dphi`` from stencil values `v`."""
    hr, ht, hp = steps
    r = np.asarray(r, dtype=LD)
    theta = np.asarray(theta, dtype=LD)
    c, rp, rm, tp, tm, pp, pm = v
    st = np.sin(theta)
    d_rr = (rp - 2 * c + rm) / (hr * hr)
    d_r = (rp - rm) / (2 * hr)
    d_tt = (tp - 2 * c + tm) / (ht * ht)
    d_t = (tp - tm) / (2 * ht)
    d_pp = (pp - 2 * c + pm) / (hp * hp)
    d_p = (pp - pm) / (2 * hp)
    lap = d_rr + 2 * d_r / r + (d_tt + np.cos(theta) / st * d_t) / (r * r) + d_pp / (r * st) ** 2
    return lap, d_p


def _psi_func(spec, c):
    def f(r, theta, phi):
        return amplitude(spec, c, r, theta) * angular_sum(spec, theta, phi)
    return f


def schrodinger_residual(spec, c, points, h, energy_shift=0.0):
    """Relative residual of the stationary Schrodinger equation.

    For em-* states the Hamiltonian is ``(p - qA)^2 / 2m + U`` with
    ``A = -hbar ell / (q rho) e_phi``, i.e.
    ``-hbar^2/2m [lap psi + 2 i (ell/rho^2) d_phi psi - (ell/rho)^2 psi]``.

    Returns
    -------
    float
        ``max |H psi - E psi| / max |E psi|`` over the points.
    """
    r, theta, phi = (np.asarray(x, dtype=LD) for x in points)
    hr, ht, hp = local_steps(h, r, theta, c.sigma_r, _winding_scale(spec))
    v, steps = stencil(_psi_func(spec, c), r, theta, phi, hr, ht, hp)
    lap, d_p = laplacian(v, r, theta, steps)
    psi = v[0]
    kin = LD(c.hbar) ** 2 / (2 * LD(c.mass))
    h_psi = -kin * lap + state_potential(spec, c, (r, theta, phi)) * psi
    if spec.is_em:
        ell = spec.base.ell
        rho2 = (r * np.sin(theta)) ** 2
        h_psi = h_psi + kin * (-2j * ell / rho2 * d_p + ell * ell / rho2 * psi)
    e = LD(energy(spec, c))
    e_psi = (e + LD(energy_shift)) * psi
    res = np.max(np.abs(h_psi - e_psi))
    return float(res / np.max(np.abs(e * psi)))


def continuity_residual(spec, c, points, h):
    """Relative finite-difference divergence of the current.

    Uses the expanded form
    ``div J = d_r J_r + 2 J_r / r + (d_theta J_theta + cot(theta) J_theta) / r
    + d_phi J_phi / (r sin theta)``, normalized by
    ``max q (hbar/m) f (|tau| / r + |ell| / rho) / r``.
    """
    r, theta, phi = (np.asarray(x, dtype=LD) for x in points)
    hr, ht, hp = local_steps(h, r, theta, c.sigma_r, _winding_scale(spec))

    def jfunc(R, T, P):
        j = current_density(spec, c, (R, T, P))
        return np.stack([np.asarray(x, dtype=LD) for x in j])

    hr = (r + hr) - r
    ht = (theta + ht) - theta
    hp = (phi + hp) - phi
    R = np.concatenate([r, r + hr, r - hr, r, r, r, r])
    T = np.concatenate([theta, theta, theta, theta + ht, theta - ht, theta, theta])
    P = np.concatenate([phi, phi, phi, phi, phi, phi + hp, phi - hp])
    j = jfunc(R, T, P).reshape(3, 7, -1)
    jr, jt, jp = j
    st = np.sin(theta)
    div = ((jr[1] - jr[2]) / (2 * hr) + 2 * jr[0] / r
           + ((jt[3] - jt[4]) / (2 * ht) + np.cos(theta) / st * jt[0]) / r
           + (jp[5] - jp[6]) / (2 * hp) / (r * st))
    a2 = amplitude(spec, c, r, theta) ** 2
    s = angular_sum(spec, theta, phi)
    f = a2 * (s.real**2 + s.imag**2)
    tau_max = max(abs(tb) for _, _, tb in branches(spec))
    ell_max = max(abs(lb) for _, lb, _ in branches(spec))
    scale = abs(c.charge) * c.hbar / c.mass * f * (tau_max / r + ell_max / (r * st) + 1 / r) / r
    return float(np.max(np.abs(div)) / np.max(scale))


def convergence_order(steps, residuals):
    """Least-squares slope of ``log(residual)`` against ``log(h)``."""
    h = np.log(np.asarray(steps, dtype=float))
    e = np.asarray(residuals, dtype=float)
    if np.any(e <= 0):
        return float("nan")
    return float(np.polyfit(h, np.log(e), 1)[0])


def has_polar_flux(spec):
    """Whether the current has a nonzero theta component to be discretized."""
    eff = effective_winding(spec)
    if eff is not None:
        return eff[1] != 0
    return any(tb != 0 for _, _, tb in branches(spec))
