import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadfunnel.fields import (
    NoClosedFormError,
    characteristics,
    circulation,
    compton_cutoff,
    current_density,
    dissipation_density,
    energy_split,
    forces,
    magnetic_charge,
    potential_params,
    quantum_potential,
    scalar_potential,
    state_potential,
    state_velocity,
    to_cartesian,
    trace_streamline,
    vector_potential,
    velocity,
)
from quadfunnel.specfun import Triple
from quadfunnel.states import (
    NATURAL,
    BoundedQN,
    PhysicalConstants,
    SingularQN,
    SphericalPoint,
    bounded_state,
    density,
    make_superposition,
    phase_field,
    singular_state,
)

R2 = 1 / math.sqrt(2)
EQ = (1.0, math.pi / 2, 0.0)


def test_velocity_example():
    v = velocity(4, 1, NATURAL, (2.0, math.pi / 2, 0.0))
    np.testing.assert_allclose(tuple(v), (0.0, 0.5, 2.0), atol=1e-15)


def test_velocity_zero_winding():
    assert tuple(velocity(0, 0, NATURAL, (1.3, 0.7, 0.2))) == (0.0, 0.0, 0.0)


def test_velocity_minimum_at_equator():
    theta = np.linspace(0.2, np.pi - 0.2, 201)
    v = velocity(3, 1, NATURAL, (1.0, theta, 0.0))
    assert theta[np.argmin(v.v_phi)] == pytest.approx(np.pi / 2)


def test_velocity_is_phase_gradient():
    spec = singular_state(0, 1, 3)
    r, th, ph, h = 1.4, 0.9, 0.5, 1e-6
    grad_t = (phase_field(spec, NATURAL, (r, th + h, ph)) - phase_field(spec, NATURAL, (r, th - h, ph))) / (2 * h * r)
    grad_p = (phase_field(spec, NATURAL, (r, th, ph + h)) - phase_field(spec, NATURAL, (r, th, ph - h))) / (
        2 * h * r * math.sin(th))
    v = velocity(3, spec.base.tau, NATURAL, (r, th, ph))
    assert v.v_theta == pytest.approx(grad_t, rel=1e-9)
    assert v.v_phi == pytest.approx(grad_p, rel=1e-9)


@pytest.mark.parametrize(
    "kind, c, expected",
    [
        ("azimuthal", (R2, R2), (0.0, 2.0 / 1.5, 0.0)),
        ("axial", (R2, R2), (0.0, 0.0, 3.0 / 1.5)),
        ("double", (R2, R2, R2, R2), (0.0, 0.0, 0.0)),
    ],
)
def test_superposition_velocity(kind, c, expected):
    spec = make_superposition(kind, SingularQN(0, 1, 3, 1), c)
    v = state_velocity(spec, NATURAL, (1.5, math.pi / 2, 0.1))
    np.testing.assert_allclose(tuple(v), expected, atol=1e-14)


def test_unequal_superposition_velocity_is_current_over_density():
    spec = make_superposition("azimuthal", SingularQN(0, 0, 2, 1), (0.6, 0.8))
    p = (1.2, 1.0, 0.3)
    j = current_density(spec, NATURAL, p)
    f = density(spec, NATURAL, p)
    v = state_velocity(spec, NATURAL, p)
    np.testing.assert_allclose(tuple(v), tuple(x / f for x in j), rtol=1e-13)


def test_vector_potential_example():
    a = vector_potential(1, NATURAL, EQ)
    assert a.v_phi == pytest.approx(-1.0)
    assert tuple(vector_potential(0, NATURAL, EQ)) == (0.0, 0.0, 0.0)


def test_scalar_potential_examples():
    spec = singular_state(0, 0, 0)
    assert potential_params(spec) == (3, -1)
    assert scalar_potential(3, -1, NATURAL, EQ) == pytest.approx(-0.125, abs=1e-15)
    assert scalar_potential(0, 0, NATURAL, (2.0, 0.4, 0.0)) == pytest.approx(4 / 8)


def test_bounded_oscillator_potential():
    spec = bounded_state(0, 2, (2, 0, 2))
    assert potential_params(spec) == (0, 0)
    r = np.linspace(0.3, 3, 7)
    np.testing.assert_allclose(state_potential(spec, NATURAL, (r, 1.0, 0.0)), r**2 / 8, rtol=1e-15)


def test_quantum_potential_example():
    assert quantum_potential(singular_state(0, 0, 0), NATURAL, EQ) == pytest.approx(0.375, abs=1e-15)


def test_energy_split_example():
    b = energy_split(singular_state(0, 0, 0), NATURAL, EQ)
    assert (b.T, b.V, b.E) == pytest.approx((0.5, 0.25, 0.75), abs=1e-15)


def test_quantum_potential_no_closed_form():
    spec = make_superposition("azimuthal", SingularQN(0, 0, 2, 1), (R2, R2))
    with pytest.raises(NoClosedFormError):
        quantum_potential(spec, NATURAL, EQ)


@settings(max_examples=50, deadline=None)
@given(
    n=st.integers(0, 4),
    kappa=st.integers(0, 4),
    ell=st.integers(-5, 5),
    r=st.floats(0.2, 5.0),
    theta=st.floats(0.15, math.pi - 0.15),
)
def test_hamilton_jacobi_singular(n, kappa, ell, r, theta):
    b = energy_split(singular_state(n, kappa, ell), NATURAL, (r, theta, 0.0))
    scale = max(abs(b.T), abs(b.U), abs(b.Q), abs(b.E))
    assert abs(b.E - b.T - b.U - b.Q) <= 1e-12 * scale


def test_dissipation_examples():
    assert dissipation_density(1, NATURAL, (1.0, math.pi / 2, 0.0)) == pytest.approx(0.0, abs=1e-16)
    assert dissipation_density(1, NATURAL, (1.0, math.pi / 4, 0.0)) == pytest.approx(1.0)
    th = np.linspace(0.2, 1.4, 5)
    np.testing.assert_allclose(dissipation_density(2, NATURAL, (1.3, th, 0.0)),
                               -dissipation_density(2, NATURAL, (1.3, np.pi - th, 0.0)), rtol=1e-12)


@pytest.mark.parametrize("ell", [-3, 0, 2])
@pytest.mark.parametrize("rho, theta", [(0.5, 0.7), (2.0, 1.5)])
def test_circulation_quantized(ell, rho, theta):
    num, exact = circulation(ell, NATURAL, rho, theta)
    assert exact == pytest.approx(2 * math.pi * ell)
    assert num == pytest.approx(exact, rel=1e-12, abs=1e-12)


def test_magnetic_charge():
    assert magnetic_charge(0, NATURAL) == 0.0
    assert magnetic_charge(1, NATURAL) == pytest.approx(2 * math.pi)
    c = PhysicalConstants.si()
    assert magnetic_charge(3, c) * c.charge == pytest.approx(circulation(3, c, 1e-10, 1.0)[1], rel=1e-14)


def test_compton_cutoff():
    assert compton_cutoff(3, NATURAL) == 3.0


def test_characteristics_examples():
    ch = characteristics(4, 1, NATURAL, (1.0, math.pi / 4, 0.0))
    assert ch.xi == pytest.approx(4.0)
    assert ch.eta == pytest.approx(math.pi / 4)
    assert characteristics(4, 1, NATURAL, (2.0, 1.0, 0.0)).omega == pytest.approx(0.25)
    with pytest.raises(ValueError):
        characteristics(4, 0, NATURAL, EQ)


def test_streamline_conserves_xi_and_radius():
    line = trace_streamline(4, 1, NATURAL, SphericalPoint(1.0, math.pi / 2, 0.0), n_steps=2000)
    r, theta, phi = line.arrays()
    xi = phi + 4 / np.tan(theta)
    np.testing.assert_allclose(r, 1.0, atol=1e-14)
    assert np.max(np.abs(xi - xi[0])) < 1e-8


def test_streamline_closes_for_pure_azimuthal_flow():
    line = trace_streamline(3, 0, NATURAL, SphericalPoint(1.0, 1.0, 0.0))
    assert line.closed
    r, theta, _ = line.arrays()
    np.testing.assert_allclose(theta, 1.0, atol=1e-14)


def test_forces_balance_and_centripetal():
    qn = BoundedQN(1, 3, Triple(3, 4, 5), 1)
    p = (np.linspace(0.5, 3, 9), np.linspace(0.3, 2.8, 9), np.zeros(9))
    f = forces(qn, NATURAL, p)
    for a, b in zip(f.F_U, f.F_Q):
        assert np.all(a + b == 0)
    for a, q, u in zip(f.a_c, f.F_Q_rot, f.F_U):
        np.testing.assert_allclose(a, q + u, rtol=1e-12, atol=1e-12)


def test_to_cartesian_basis():
    x, y, z = to_cartesian(velocity(1, 0, NATURAL, (1.0, math.pi / 2, 0.0)), math.pi / 2, 0.0)
    assert (x, y, z) == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)
