"""Product quadrature over all space.

Radial integrals use a generalized Gauss-Laguerre rule in ``x = 2 nu r^2``;
polar integrals use Gauss-Legendre in ``cos(theta)`` for smooth (bounded
family) integrands and a symmetric midpoint rule in ``theta`` for the
singular family, whose ``1/sin`` and ``cot`` factors cancel in pairs about
the equator; the azimuth uses the periodic trapezoid rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_genlaguerre

__all__ = [
    "QuadratureSpec",
    "gauss_legendre_rule",
    "radial_rule",
    "radial_measure",
    "polar_rule",
    "azimuth_rule",
    "SphereGrid",
    "product_grid",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Orders of the product rule.

    Attributes
    ----------
    radial_order, theta_order : int
        Node counts of the radial and polar rules, ``>= 2``.
    phi_points : int
        Even number of trapezoid nodes in ``phi``.
    theta_margin : float
        Minimum distance of polar nodes from the axis.
    """

    radial_order: int = 64
    theta_order: int = 64
    phi_points: int = 256
    theta_margin: float = 1e-6

    def __post_init__(self):
        if min(self.radial_order, self.theta_order, self.phi_points) < 2:
            raise ValueError("quadrature orders must be >= 2")
        if self.phi_points % 2:
            raise ValueError("phi_points must be even")


@lru_cache(maxsize=64)
def _gl(order):
    k = np.arange(1, order + 1)
    x = np.cos(np.pi * (k - 0.25) / (order + 0.5))
    for _ in range(100):
        p0, p1 = np.ones_like(x), x.copy()
        for j in range(2, order + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = order * (x * p1 - p0) / (x * x - 1)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p0, p1 = np.ones_like(x), x.copy()
    for j in range(2, order + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = order * (x * p1 - p0) / (x * x - 1)
    w = 2 / ((1 - x * x) * dp * dp)
    # ascending nodes, exactly antisymmetric
    x = x[::-1].copy()
    w = w[::-1].copy()
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x, w


def gauss_legendre_rule(order):
    """Gauss-Legendre nodes and weights on ``[-1, 1]``.

    Roots of :math:`P_n` are found by Newton iteration from the Chebyshev-like
    guess ``cos(pi (k - 1/4) / (n + 1/2))``; weights are
    ``2 / ((1 - x^2) P_n'(x)^2)``.

    Returns
    -------
    nodes, weights : ndarray
        Ascending nodes.
    """
    order = int(order)
    if order < 1:
        raise ValueError("order must be >= 1")
    if order == 1:
        return np.array([0.0]), np.array([2.0])
    x, w = _gl(order)
    return x.copy(), w.copy()


def radial_rule(order, a, nu):
    """Rule for :math:`\\int_0^\\infty r^{2a+2} e^{-2\\nu r^2} g(r)\\,dr`.

    With ``x = 2 nu r^2`` the integral becomes
    :math:`\\frac{(2\\nu)^{-(a+3/2)}}{2}\\int_0^\\infty x^{a+1/2}e^{-x} g\\,dx`,
    evaluated with the generalized Gauss-Laguerre rule of parameter
    ``a + 1/2``. Exact for ``g`` polynomial in ``r^2`` of degree up to
    ``2 order - 1``.

    Returns
    -------
    r, w : ndarray
    """
    if not a > -1.5:
        raise ValueError(f"weight r^(2a+2) not integrable at 0 for a={a}")
    if not nu > 0:
        raise ValueError("nu must be positive")
    x, wx = roots_genlaguerre(int(order), a + 0.5)
    r = np.sqrt(x / (2 * nu))
    w = wx * (2 * nu) ** (-(a + 1.5)) / 2
    return r, w


def radial_measure(order, a, nu):
    """Rule for :math:`\\int_0^\\infty F(r)\\,r^2 dr`, exact for
    ``F = r^{2a} e^{-2 nu r^2} * poly(r^2)``."""
    r, w = radial_rule(order, a, nu)
    return r, w / (r ** (2 * a) * np.exp(-2 * nu * r * r))


def polar_rule(order, symmetric_theta, margin=0.0, half=False):
    """Polar nodes ``theta`` and weights for :math:`\\int g\\,\\sin\\theta\\,d\\theta`.

    Parameters
    ----------
    symmetric_theta : bool
        Midpoint rule ``theta_k = (k + 1/2) pi / M`` (weights include
        ``sin theta``) instead of Gauss-Legendre in ``cos theta``.
    half : bool
        Restrict to ``(0, pi/2)`` (self-test of the principal-value
        cancellation).
    """
    if symmetric_theta:
        k = np.arange(order)
        theta = (k + 0.5) * np.pi / order
        theta = np.where(k >= order - k - 1, np.pi - theta[::-1], theta)
        w = np.sin(theta) * (np.pi / order)
    else:
        x, w = gauss_legendre_rule(order)
        theta = np.arccos(-x)
    if np.min(np.minimum(theta, np.pi - theta)) < margin:
        raise ValueError("polar nodes violate the axis margin")
    if half:
        keep = theta < np.pi / 2
        theta, w = theta[keep], w[keep]
    return theta, w


def azimuth_rule(points):
    phi = 2 * np.pi * np.arange(points) / points
    return phi, np.full(points, 2 * np.pi / points)


@dataclass(frozen=True)
class SphereGrid:
    """Tensor-product grid with weights for :math:`\\int F\\,d^3r`."""

    r: np.ndarray
    wr: np.ndarray
    theta: np.ndarray
    wt: np.ndarray
    phi: np.ndarray
    wp: np.ndarray

    def integrate(self, values):
        """Integrate a full ``(Nr, Ntheta, Nphi)`` array."""
        return float(np.einsum("i,j,k,ijk->", self.wr, self.wt, self.wp, values))

    def integrate_factored(self, rt, tp):
        """Integrate ``rt(r, theta) * tp(theta, phi)`` without forming the product.

        ``rt`` has shape ``(Nr, Ntheta)`` and ``tp`` ``(Ntheta, Nphi)``.
        """
        radial = self.wr @ np.broadcast_to(rt, (self.r.size, self.theta.size))
        azim = np.broadcast_to(tp, (self.theta.size, self.phi.size)) @ self.wp
        return float(np.sum(self.wt * radial * azim))

    @property
    def rt(self):
        """``(r, theta)`` broadcast pair of shape ``(Nr, 1)``, ``(1, Ntheta)``."""
        return self.r[:, None], self.theta[None, :]

    @property
    def tp(self):
        return self.theta[:, None], self.phi[None, :]


def product_grid(quad, a, nu, symmetric_theta, half=False):
    """Product grid for radial parameter `a` and the chosen polar rule."""
    r, wr = radial_measure(quad.radial_order, a, nu)
    theta, wt = polar_rule(quad.theta_order, symmetric_theta, quad.theta_margin, half)
    phi, wp = azimuth_rule(quad.phi_points)
    return SphereGrid(r, wr, theta, wt, phi, wp)


def gamma_ratio_oracle(n, a):
    """``Gamma(n + a + 3/2) / n!``; the radial normalization integral in ``x``."""
    return math.exp(math.lgamma(n + a + 1.5) - math.lgamma(n + 1))
