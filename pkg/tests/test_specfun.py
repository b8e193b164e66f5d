import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, lpmv, sph_harm_y

from quadfunnel.specfun import (
    QuantumNumberError,
    Triple,
    assoc_legendre,
    classify_angular_family,
    enumerate_triples,
    laguerre,
    legendre_trig,
    modified_sph_harm,
    norm_bounded,
    norm_singular,
)


@pytest.mark.parametrize(
    "n, alpha, x, expected",
    [
        (0, 0.5, 1.3, 1.0),
        (1, 0.5, 1.0, 0.5),
        (2, 0.5, 2.0, -1.125),
    ],
)
def test_laguerre_examples(n, alpha, x, expected):
    assert laguerre(n, alpha, x) == pytest.approx(expected, abs=1e-14)


def test_laguerre_series_oracle():
    x = np.linspace(0, 10, 41)
    a = 0.5
    ref = x**2 / 2 - (a + 2) * x + (a + 1) * (a + 2) / 2
    np.testing.assert_allclose(laguerre(2, a, x), ref, rtol=1e-13, atol=1e-13)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 12), alpha=st.floats(-0.49, 12.5), x=st.floats(0, 30))
def test_laguerre_matches_scipy(n, alpha, x):
    ref = eval_genlaguerre(n, alpha, x)
    assert laguerre(n, alpha, x) == pytest.approx(ref, rel=1e-10, abs=1e-10 * (1 + abs(ref)))


def test_laguerre_preserves_longdouble():
    x = np.array([0.3, 1.7], dtype=np.longdouble)
    assert laguerre(3, 1.5, x).dtype == np.longdouble


def test_laguerre_rejects_negative_degree():
    with pytest.raises(QuantumNumberError):
        laguerre(-1, 0.5, 1.0)


@pytest.mark.parametrize(
    "s, l, x, expected",
    [
        (0, 0, 0.7, 1.0),
        (1, 0, 0.3, 0.3),
        (2, 1, 0.5, -1.299038105676658),
    ],
)
def test_assoc_legendre_examples(s, l, x, expected):
    assert assoc_legendre(s, l, x) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("s", range(0, 8))
def test_assoc_legendre_matches_scipy(s):
    # scipy's lpmv also carries the Condon-Shortley phase
    x = np.linspace(-0.99, 0.99, 23)
    for l in range(0, s + 1):
        np.testing.assert_allclose(assoc_legendre(s, l, x), lpmv(l, s, x), rtol=1e-11, atol=1e-11)


def test_assoc_legendre_negative_order_reflection():
    x = np.linspace(-0.9, 0.9, 7)
    ratio = (-1) ** 2 * math.factorial(3 - 2) / math.factorial(3 + 2)
    np.testing.assert_allclose(assoc_legendre(3, -2, x), ratio * assoc_legendre(3, 2, x), rtol=1e-13)


def test_assoc_legendre_rejects_order_above_degree():
    with pytest.raises(QuantumNumberError):
        assoc_legendre(2, 3, 0.4)


def test_legendre_trig_agrees_with_cosine_form():
    t = np.linspace(0.1, 3.0, 9)
    np.testing.assert_allclose(legendre_trig(4, 3, np.cos(t), np.sin(t)),
                               assoc_legendre(4, 3, np.cos(t)), rtol=1e-12)


def test_modified_harmonic_constant():
    assert modified_sph_harm(0, 0, 0, 1.1, 2.3) == pytest.approx(1 / math.sqrt(4 * math.pi))


def test_modified_harmonic_example():
    assert modified_sph_harm(3, 5, 3, math.pi / 2, 0.0).real == pytest.approx(-0.41722, abs=5e-6)


@pytest.mark.parametrize("s, l", [(0, 0), (2, 1), (3, 3), (5, 2)])
def test_modified_harmonic_reduces_to_spherical_harmonic(s, l):
    # with ell = l the modified harmonic is the ordinary one
    theta = np.linspace(0.2, 2.9, 5)[:, None]
    phi = np.linspace(0, 6, 6)[None, :]
    np.testing.assert_allclose(modified_sph_harm(s, l, l, theta, phi),
                               sph_harm_y(s, l, theta, phi), rtol=1e-12, atol=1e-14)


def test_enumerate_triples_contents():
    got = {(t.l, t.eps, t.ell) for t in enumerate_triples(13)}
    for want in [(3, 4, 5), (4, 3, 5), (5, 12, 13), (12, 5, 13), (6, 8, 10)]:
        assert want in got
    assert enumerate_triples(4) == []


def test_enumerate_triples_sorted_and_strict():
    ts = enumerate_triples(25)
    assert [(t.ell, t.l) for t in ts] == sorted((t.ell, t.l) for t in ts)
    assert all(t.l > 0 and t.eps > 0 for t in ts)
    assert (7, 24, 25) in {(t.l, t.eps, t.ell) for t in ts}


@pytest.mark.parametrize(
    "triple, family",
    [
        ((0, 7, 7), "axial"),
        ((3, 4, 5), "pythagorean"),
        ((2, 0, 2), "oscillator"),
        ((0, 0, 0), "oscillator"),
        ((2, 2, 3), "invalid"),
    ],
)
def test_classify(triple, family):
    assert classify_angular_family(*triple) == family


def test_triple_validation_and_parse():
    assert Triple.parse("3, 4, 5") == Triple(3, 4, 5)
    assert Triple(3, 4, 5).family == "pythagorean"
    with pytest.raises(QuantumNumberError):
        Triple(2, 2, 3)
    with pytest.raises(QuantumNumberError):
        Triple(-3, 4, 5)
    with pytest.raises(ValueError):
        Triple.parse("3,4")


def test_norm_examples():
    exact = (2 * math.pi**2 * math.gamma(1.5) * 2**1.5 / 2) ** -0.5
    assert norm_singular(0, 0, 1.0) == pytest.approx(exact, rel=1e-14)
    assert norm_singular(0, 0, 1.0) == pytest.approx(0.201047, rel=1e-4)
    assert norm_bounded(0, 0, 0, 1.0) == pytest.approx(0.251984, rel=1e-4)
    assert norm_bounded(0, 0, 0, 1.0) == pytest.approx((2 * math.pi) ** -0.75, rel=1e-14)


@pytest.mark.parametrize("sigma", [0.5, 1.0, 3.0])
def test_norm_scaling(sigma):
    # N scales as sigma^-(kappa + 3/2)
    assert norm_singular(2, 1, sigma) == pytest.approx(norm_singular(2, 1) * sigma**-2.5, rel=1e-13)


def test_norm_rejects_bad_numbers():
    with pytest.raises(QuantumNumberError):
        norm_bounded(0, 1, 2)
    with pytest.raises(QuantumNumberError):
        norm_singular(-1, 0)
