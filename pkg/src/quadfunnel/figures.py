"""Numerical data behind the figures: streamlines, potentials, densities, harmonics.

Every generator returns ``(columns, rows)``; rows are tuples of numbers in
column order. No plotting is done here.
"""

from __future__ import annotations

import math

import numpy as np

from .fields import characteristics, scalar_potential, trace_streamline
from .specfun import modified_sph_harm
from .states import NATURAL, SingularQN, SphericalPoint, density, make_superposition, singular_state

__all__ = [
    "FIGURE_IDS",
    "FIG6_LABELS",
    "figure_data",
    "streamline_rows",
    "count_ring_nodes",
    "fig3_center_rings",
    "fig3_right_rings",
]

FIGURE_IDS = ("fig1", "fig2", "fig3-left", "fig3-center", "fig3-right", "fig4", "fig5", "fig6")

# (s, l, eps, ell)
FIG6_LABELS = ((0, 0, 3, 3), (1, 0, 3, 3), (0, 0, 4, 4), (1, 0, 4, 4), (3, 3, 4, 5), (4, 4, 3, 5))

RING_SAMPLES = 720
STREAM_COLUMNS = ("panel", "line", "index", "r", "theta", "phi", "x", "y", "z", "xi")


def _xyz(r, theta, phi):
    st = math.sin(theta)
    return r * st * math.cos(phi), r * st * math.sin(phi), r * math.cos(theta)


def streamline_rows(panel, ell, tau, seeds, c=NATURAL, stride=1, n_steps=200000):
    """Trace each seed forwards and backwards; one row per kept point.

    Lines are numbered ``2k`` (forward) and ``2k + 1`` (backward). The last
    column is ``xi = phi + (ell/tau) cot(theta)`` (NaN when ``tau = 0``),
    with ``phi`` unwrapped.
    """
    rows = []
    for k, seed in enumerate(seeds):
        for d, sign in enumerate((1, -1)):
            line = trace_streamline(sign * ell, sign * tau, c, seed, n_steps=n_steps)
            for i, p in enumerate(line.points):
                if i % stride and i != len(line.points) - 1:
                    continue
                xi = (characteristics(ell, tau, c, p).xi if tau != 0 else math.nan)
                rows.append((panel, 2 * k + d, i, p.r, p.theta, p.phi,
                             *_xyz(p.r, p.theta, p.phi), float(xi)))
    return rows


def _equator_seeds(count, r=1.0):
    return [SphericalPoint(r, math.pi / 2, 2 * math.pi * k / count) for k in range(count)]


def _fig1(c, stride):
    return STREAM_COLUMNS, streamline_rows(0, 4, 1, _equator_seeds(4), c, stride)


def _fig4(c, stride):
    seeds = _equator_seeds(4)
    rows = streamline_rows(0, 3, -2, seeds, c, stride)
    rows += streamline_rows(1, -3, -2, seeds, c, stride)
    rows += streamline_rows(2, 0, -2, seeds, c, stride)
    return STREAM_COLUMNS, rows


def _fig5(c, stride):
    seeds = _equator_seeds(4)
    rows = streamline_rows(0, 3, 2, seeds, c, stride)
    rows += streamline_rows(1, 3, -2, seeds, c, stride)
    lat = [SphericalPoint(1.0, k * math.pi / 6, 0.0) for k in range(1, 6)]
    rows += streamline_rows(2, 3, 0, lat, c, stride, n_steps=int(2.2 * math.pi / 1e-3))
    return STREAM_COLUMNS, rows


def _fig2(c, count=60, extent=3.0):
    # meridional plane (x, z); an even cell-centred grid keeps x = 0 out
    spec = singular_state(0, 1, 1)
    from .fields import potential_params
    p1, p2 = potential_params(spec)
    xs = -extent + (np.arange(count) + 0.5) * (2 * extent / count)
    rows = []
    for x in xs:
        for z in xs:
            r = math.hypot(x, z)
            theta = math.atan2(abs(x), z)
            u = float(scalar_potential(p1, p2, c, (r * c.sigma_r, theta, 0.0)))
            rows.append((x, z, r, theta, u))
    return ("x", "z", "r", "theta", "U"), rows


def _ring_rows(spec, c, radii, theta, phi):
    rows = []
    for r in radii:
        f = density(spec, c, (np.full_like(phi, r), theta, phi))
        rows += [(r, t, p, *_xyz(r, t, p), v)
                 for t, p, v in zip(np.broadcast_to(theta, phi.shape), phi, f)]
    return rows


def _fig3_left(c):
    spec = singular_state(3, 1, 1)
    phi = 2 * np.pi * np.arange(RING_SAMPLES // 4) / (RING_SAMPLES // 4)
    radii = 0.1 * np.arange(1, 41)
    return (("r", "theta", "phi", "x", "y", "z", "density"),
            _ring_rows(spec, c, radii, np.full_like(phi, np.pi / 2), phi))


def fig3_center_state():
    return make_superposition("azimuthal", SingularQN(3, 1, 3, 1), (2**-0.5, 2**-0.5))


def fig3_right_state():
    return make_superposition("axial", SingularQN(3, 1, 3, 1), (2**-0.5, 2**-0.5))


def _meridian_angles():
    # full meridional circle, angle alpha measured from +z; on-axis samples dropped
    j = np.arange(RING_SAMPLES)
    alpha = 2 * np.pi * j / RING_SAMPLES
    keep = (j % (RING_SAMPLES // 2)) != 0
    alpha = alpha[keep]
    theta = np.where(alpha < np.pi, alpha, 2 * np.pi - alpha)
    phi = np.where(alpha < np.pi, 0.0, np.pi)
    return alpha, theta, phi


def fig3_center_rings(c=NATURAL, radii=None):
    """Equatorial-ring density samples of the azimuthal ``+`` superposition."""
    spec = fig3_center_state()
    radii = 0.1 * np.arange(1, 41) if radii is None else radii
    phi = 2 * np.pi * np.arange(RING_SAMPLES) / RING_SAMPLES
    theta = np.full_like(phi, np.pi / 2)
    return [(r, density(spec, c, (np.full_like(phi, r), theta, phi))) for r in radii]


def fig3_right_rings(c=NATURAL, radii=None):
    """Meridional-circle density samples of the axial ``+`` superposition."""
    spec = fig3_right_state()
    radii = 0.1 * np.arange(1, 41) if radii is None else radii
    _, theta, phi = _meridian_angles()
    return [(r, density(spec, c, (np.full_like(phi, r), theta, phi))) for r in radii]


def _fig3_center(c):
    spec = fig3_center_state()
    phi = 2 * np.pi * np.arange(RING_SAMPLES) / RING_SAMPLES
    return (("r", "theta", "phi", "x", "y", "z", "density"),
            _ring_rows(spec, c, 0.1 * np.arange(1, 41), np.full_like(phi, np.pi / 2), phi))


def _fig3_right(c):
    spec = fig3_right_state()
    alpha, theta, phi = _meridian_angles()
    rows = []
    for r in 0.1 * np.arange(1, 41):
        f = density(spec, c, (np.full_like(theta, r), theta, phi))
        rows += [(r, a, t, p, *_xyz(r, t, p), v) for a, t, p, v in zip(alpha, theta, phi, f)]
    return ("r", "alpha", "theta", "phi", "x", "y", "z", "density"), rows


def _fig6(c, n_theta=91, n_phi=181):
    theta = np.linspace(0, np.pi, n_theta)
    phi = np.linspace(0, 2 * np.pi, n_phi)
    rows = []
    for s, l, eps, ell in FIG6_LABELS:
        y = modified_sph_harm(s, ell, l, theta[:, None], phi[None, :]).real
        for i, t in enumerate(theta):
            for j, p in enumerate(phi):
                rows.append((s, l, eps, ell, t, p, y[i, j]))
    return ("s", "l", "eps", "ell", "theta", "phi", "re_Y"), rows


def count_ring_nodes(values, rel_threshold=1e-8):
    """Number of zeros of a periodic non-negative ring sample.

    A node is a local minimum (periodic neighbours) whose value is at most
    ``rel_threshold`` times the ring maximum.
    """
    v = np.asarray(values, dtype=float)
    prev, nxt = np.roll(v, 1), np.roll(v, -1)
    is_min = (v <= prev) & (v < nxt)
    return int(np.count_nonzero(is_min & (v <= rel_threshold * np.max(v))))


def figure_data(fig_id, c=NATURAL, stride=20):
    """Columns and rows for a figure id (see :data:`FIGURE_IDS`)."""
    if fig_id == "fig1":
        return _fig1(c, stride)
    if fig_id == "fig2":
        return _fig2(c)
    if fig_id == "fig3-left":
        return _fig3_left(c)
    if fig_id == "fig3-center":
        return _fig3_center(c)
    if fig_id == "fig3-right":
        return _fig3_right(c)
    if fig_id == "fig4":
        return _fig4(c, stride)
    if fig_id == "fig5":
        return _fig5(c, stride)
    if fig_id == "fig6":
        return _fig6(c)
    raise ValueError(f"unknown figure id {fig_id!r}")
