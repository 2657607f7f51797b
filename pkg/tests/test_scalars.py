import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relmod.errors import ConfigError
from relmod.scalars import RootOfUnity, Tolerance, base_qfact, qexp_trunc, qfact, qnum, xi_pow

ODD_ELLS = st.sampled_from([3, 5, 7, 9, 11])
SMALL = st.floats(-5, 5, allow_nan=False)


@pytest.mark.parametrize("ell", [0, 1, 2, 4, 10, -3])
def test_bad_ell_rejected(ell):
    with pytest.raises(ConfigError):
        RootOfUnity(ell)


def test_bad_tolerance_rejected():
    with pytest.raises(ConfigError):
        Tolerance(eq_tol=0.0)
    with pytest.raises(ConfigError):
        Tolerance(zero_tol=float("nan"))


@given(ODD_ELLS, SMALL, SMALL, SMALL, SMALL)
def test_pow_is_a_character(ell, x1, y1, x2, y2):
    z, w = complex(x1, y1 / 5), complex(x2, y2 / 5)
    lhs = xi_pow(z + w, ell)
    assert abs(lhs - xi_pow(z, ell) * xi_pow(w, ell)) <= 1e-9 * max(1.0, abs(lhs))


@given(ODD_ELLS, st.integers(-20, 20))
def test_multiples_of_ell_give_exact_zero(ell, k):
    assert qnum(k * ell, ell) == 0
    assert xi_pow(k * ell, ell) == 1


def test_half_integer_exponent_reduction_is_exact():
    r = RootOfUnity(5)
    assert r.pow(2.5) == r.pow(7.5)
    assert r.pow(-2.5) == r.pow(2.5)


@given(ODD_ELLS, SMALL)
def test_qnum_is_odd(ell, x):
    assert abs(qnum(x, ell) + qnum(-x, ell)) < 1e-12


def test_qnum_matches_sine():
    ell = 7
    for x in (0.3, 1.0, 2.5):
        assert abs(qnum(x, ell) - 2j * math.sin(2 * math.pi * x / ell)) < 1e-14


def test_qfact_range():
    assert qfact(0, 5) == 1
    assert abs(qfact(4, 5)) > 1e-6
    with pytest.raises(ValueError):
        qfact(5, 5)


@pytest.mark.parametrize("ell", [5, 7])
def test_base_qfact_relation(ell):
    r = RootOfUnity(ell)
    p = r.pow(-2)
    for k in range(ell):
        assert abs(base_qfact(k, p) - r.pow(-k * (k - 1) / 2) * r.qfact(k)) < 1e-10


def test_base_qfact_at_one_is_factorial():
    assert base_qfact(4, 1.0) == 24


def test_qexp_of_nilpotent_is_finite_series():
    X = np.array([[0, 2.0], [0, 0]])
    out = qexp_trunc(cmath.exp(0.4j), X, 5)
    assert np.allclose(out, np.eye(2) + X)


def test_qexp_classical_limit():
    X = np.diag([0.1, 0.2]).astype(complex)
    out = qexp_trunc(1.0, X, 11)
    assert np.allclose(out, np.diag(np.exp([0.1, 0.2])), atol=1e-12)


def test_qexp_needs_square():
    with pytest.raises(ValueError):
        qexp_trunc(1.0, np.zeros((2, 3)), 5)


@settings(max_examples=30)
@given(ODD_ELLS, st.floats(0.05, 0.95))
def test_xi_has_order_ell(ell, x):
    r = RootOfUnity(ell)
    assert abs(r.xi ** ell - 1) < 1e-12
    assert abs(r.pow(x + ell) - r.pow(x)) < 1e-12
