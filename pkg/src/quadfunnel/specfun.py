"""Special functions and number-theoretic helpers.

Generalized Laguerre polynomials, associated Legendre functions with the
Condon-Shortley phase, modified spherical harmonics, normalization
constants of the two state families and Pythagorean-triple bookkeeping.

All polynomial evaluators are vectorized and preserve the floating dtype of
their input, so they can be driven in ``np.longdouble`` by the
finite-difference machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "QuantumNumberError",
    "Triple",
    "laguerre",
    "assoc_legendre",
    "legendre_trig",
    "modified_sph_harm",
    "enumerate_triples",
    "classify_angular_family",
    "norm_singular",
    "norm_bounded",
]


class QuantumNumberError(ValueError):
    """Raised for an inadmissible combination of quantum numbers."""


def _as_float_array(x):
    x = np.asarray(x)
    if not np.issubdtype(x.dtype, np.floating):
        x = x.astype(float)
    return x


def _check_nonneg_int(name, value):
    if isinstance(value, bool) or int(value) != value or value < 0:
        raise QuantumNumberError(f"{name} must be a non-negative integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class Triple:
    """Angular quantum numbers ``(l, eps, ell)`` with ``l**2 + eps**2 == ell**2``.

    Parameters
    ----------
    l : int
        Legendre order.
    eps : int
        Strength of the axis-singular potential term.
    ell : int
        Azimuthal winding.
    """

    l: int
    eps: int
    ell: int

    def __post_init__(self):
        for name in ("l", "eps", "ell"):
            _check_nonneg_int(name, getattr(self, name))
        if self.l**2 + self.eps**2 != self.ell**2:
            raise QuantumNumberError(
                f"({self.l}, {self.eps}, {self.ell}) violates l^2 + eps^2 = ell^2"
            )

    @property
    def family(self):
        return classify_angular_family(self.l, self.eps, self.ell)

    @classmethod
    def parse(cls, text):
        """Build a triple from ``"l,eps,ell"``."""
        parts = [p.strip() for p in str(text).split(",")]
        if len(parts) != 3:
            raise ValueError(f"triple must be 'l,eps,ell', got {text!r}")
        return cls(*(int(p) for p in parts))


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial :math:`L_n^{(\\alpha)}(x)`.

    Evaluated with the upward three-term recurrence

    .. math:: (k+1) L_{k+1} = (2k + 1 + \\alpha - x) L_k - (k + \\alpha) L_{k-1}.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    alpha : float
        Parameter, ``alpha > -1``.
    x : array_like
        Evaluation points. The floating dtype is preserved.

    Returns
    -------
    ndarray or float
        Polynomial values, same shape as `x`.

    Raises
    ------
    ValueError
        If ``alpha <= -1`` or `n` is not a non-negative integer.

    Examples
    --------
    >>> float(laguerre(2, 0.5, 2.0))
    -1.125
    """
    n = _check_nonneg_int("n", n)
    if not alpha > -1:
        raise ValueError(f"alpha must exceed -1, got {alpha!r}")
    x = _as_float_array(x)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()]
    cur = 1 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur[()]


def legendre_trig(s, l, cos_t, sin_t):
    """Associated Legendre function :math:`P_s^l` from ``cos`` and ``sin``.

    Same as :func:`assoc_legendre` for ``0 <= l <= s`` but takes
    :math:`\\sqrt{1-x^2}` explicitly, which avoids cancellation when the
    caller already holds :math:`\\sin\\theta`.
    """
    cos_t = _as_float_array(cos_t)
    sin_t = np.asarray(sin_t, dtype=cos_t.dtype)
    # seed P_l^l = (-1)^l (2l-1)!! sin^l
    pll = np.ones_like(cos_t)
    for k in range(1, l + 1):
        pll = -(2 * k - 1) * sin_t * pll
    if s == l:
        return pll
    prev, cur = pll, (2 * l + 1) * cos_t * pll
    for k in range(l + 1, s):
        prev, cur = cur, ((2 * k + 1) * cos_t * cur - (k + l) * prev) / (k - l + 1)
    return cur


def assoc_legendre(s, l, x):
    """Associated Legendre function :math:`P_s^l(x)` with Condon-Shortley phase.

    Parameters
    ----------
    s : int
        Degree, ``s >= 0``.
    l : int
        Order, ``|l| <= s``. Negative orders use
        :math:`P_s^{-l} = (-1)^l \\frac{(s-l)!}{(s+l)!} P_s^l`.
    x : array_like
        Points in ``[-1, 1]``.

    Returns
    -------
    ndarray or float

    Examples
    --------
    >>> round(float(assoc_legendre(2, 1, 0.5)), 6)
    -1.299038
    """
    s = _check_nonneg_int("s", s)
    l = int(l)
    if abs(l) > s:
        raise QuantumNumberError(f"|l| must not exceed s, got l={l}, s={s}")
    x = _as_float_array(x)
    if np.any(np.abs(x) > 1):
        raise ValueError("assoc_legendre requires |x| <= 1")
    m = abs(l)
    val = legendre_trig(s, m, x, np.sqrt((1 - x) * (1 + x)))
    if l < 0:
        ratio = math.exp(math.lgamma(s - m + 1) - math.lgamma(s + m + 1))
        val = (-1) ** m * ratio * val
    return val[()]


def modified_sph_harm(s, ell, l, theta, phi):
    """Modified spherical harmonic :math:`Y_s^{(\\ell, l)}(\\theta, \\phi)`.

    .. math::

        Y_s^{(\\ell,l)} = \\sqrt{\\frac{(2s+1)(s-l)!}{4\\pi (s+l)!}}\\,
        e^{i\\ell\\phi} P_s^l(\\cos\\theta)

    The winding `ell` is decoupled from the Legendre order `l`; for
    ``ell == l`` this is the standard spherical harmonic.

    Parameters
    ----------
    s, ell, l : int
        Degree, azimuthal winding and Legendre order, ``0 <= l <= s``.
    theta, phi : array_like
        Polar and azimuthal angles, broadcast together.

    Returns
    -------
    ndarray or complex
    """
    s = _check_nonneg_int("s", s)
    l = _check_nonneg_int("l", l)
    if l > s:
        raise QuantumNumberError(f"l must not exceed s, got l={l}, s={s}")
    theta = _as_float_array(theta)
    phi = np.asarray(phi, dtype=theta.dtype)
    log_c = 0.5 * (math.log(2 * s + 1) + math.lgamma(s - l + 1)
                   - math.log(4 * math.pi) - math.lgamma(s + l + 1))
    p = legendre_trig(s, l, np.cos(theta), np.sin(theta))
    return (math.exp(log_c) * p * np.exp(1j * ell * phi))[()]


def enumerate_triples(ell_max):
    """All strict Pythagorean triples with hypotenuse up to `ell_max`.

    Exhaustive search over ``1 <= l, eps < ell <= ell_max``, so non-primitive
    multiples such as ``(6, 8, 10)`` are included.

    Returns
    -------
    list of Triple
        Sorted by ``ell`` and then ``l``.
    """
    out = []
    for ell in range(1, int(ell_max) + 1):
        for l in range(1, ell):
            eps = math.isqrt(ell * ell - l * l)
            if eps >= 1 and l * l + eps * eps == ell * ell:
                out.append(Triple(l, eps, ell))
    return out


def classify_angular_family(l, eps, ell):
    """Classify ``(l, eps, ell)`` as axial, pythagorean, oscillator or invalid."""
    if min(l, eps, ell) < 0:
        return "invalid"
    if l == 0 and eps == ell and ell >= 1:
        return "axial"
    if eps == 0 and l == ell:
        return "oscillator"
    if l >= 1 and eps >= 1 and l * l + eps * eps == ell * ell:
        return "pythagorean"
    return "invalid"


def norm_singular(n, kappa, sigma_r=1.0):
    """Normalization constant :math:`N_n^{(\\kappa)}` of the singular family.

    .. math::

        N_n^{(\\kappa)} = \\frac{2^n}{\\pi\\sigma_r^{\\kappa+1}}
        \\sqrt{\\frac{2^\\kappa\\, n!\\,(n+\\kappa)!}
        {\\sigma_r\\sqrt{2\\pi}\\,(2n+2\\kappa+1)!}}

    Evaluated through log-gamma.
    """
    n = _check_nonneg_int("n", n)
    kappa = _check_nonneg_int("kappa", kappa)
    if not sigma_r > 0:
        raise ValueError("sigma_r must be positive")
    log_n = (n * math.log(2) - math.log(math.pi) - (kappa + 1.5) * math.log(sigma_r)
             + 0.5 * (kappa * math.log(2) + math.lgamma(n + 1) + math.lgamma(n + kappa + 1)
                      - 0.5 * math.log(2 * math.pi) - math.lgamma(2 * n + 2 * kappa + 2)))
    return math.exp(log_n)


def norm_bounded(n, s, l, sigma_r=1.0):
    """Normalization constant :math:`N_{n,s}^{(l)}` of the bounded family.

    .. math::

        \\left(N_{n,s}^{(l)}\\right)^2 = \\frac{2^{2n+s-1}\\, n!\\,(n+s)!\\,(2s+1)\\,(s-l)!}
        {\\sigma_r^{2s+3}\\,\\pi\\sqrt{2\\pi}\\,(2n+2s+1)!\\,(s+l)!}
    """
    n = _check_nonneg_int("n", n)
    s = _check_nonneg_int("s", s)
    l = _check_nonneg_int("l", l)
    if l > s:
        raise QuantumNumberError(f"l must not exceed s, got l={l}, s={s}")
    if not sigma_r > 0:
        raise ValueError("sigma_r must be positive")
    log_n2 = ((2 * n + s - 1) * math.log(2) + math.lgamma(n + 1) + math.lgamma(n + s + 1)
              + math.log(2 * s + 1) + math.lgamma(s - l + 1)
              - (2 * s + 3) * math.log(sigma_r) - math.log(math.pi)
              - 0.5 * math.log(2 * math.pi) - math.lgamma(2 * n + 2 * s + 2)
              - math.lgamma(s + l + 1))
    return math.exp(0.5 * log_n2)
