import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relmod.errors import ConfigError, MismatchedDatum, NotInAlcove
from relmod.rootdata import RootDatum, weight_from_json

DATA = [(2, 1, 5), (3, 1, 7), (1, 2, 5), (3, 2, 7)]


@pytest.mark.parametrize("m,n,ell", [(2, 2, 5), (2, 1, 4), (3, 2, 3), (0, 1, 5)])
def test_invalid_data(m, n, ell):
    with pytest.raises(ConfigError):
        RootDatum(m, n, ell)


@pytest.mark.parametrize("m,n,ell", DATA)
def test_root_counts(m, n, ell):
    R = RootDatum(m, n, ell)
    assert len(R.pos_even) == m * (m - 1) // 2 + n * (n - 1) // 2
    assert len(R.pos_odd) == m * n
    assert len(R.simple_roots) == m + n - 1


@pytest.mark.parametrize("m,n,ell", DATA)
def test_form_is_invariant_under_str_shift(m, n, ell):
    R = RootDatum(m, n, ell)
    lam = R.weight(np.arange(1, m + n) * 0.3)
    mu = R.weight(np.arange(m + n - 1, 0, -1) * 0.7)
    shifted = R.from_vector(lam.vector + 2.5 * R.supertrace_dir)
    assert shifted.isclose(lam)
    assert abs(R.pairing(shifted, mu) - R.pairing(lam, mu)) < 1e-12
    assert np.allclose(R.project(lam.vector + 2.5 * R.supertrace_dir), R.project(lam.vector))


@pytest.mark.parametrize("m,n,ell", DATA)
def test_cartan_matrix_from_form(m, n, ell):
    R = RootDatum(m, n, ell)
    S = R.simple_roots
    C = np.array([[R.pairing(a, b) for b in S] for a in S])
    assert np.allclose(C, C.T)
    assert np.allclose(np.diag(C), [R.pairing(a, a) for a in S])


def test_sl21_coordinates():
    R = RootDatum(2, 1, 5)
    a1, a2 = R.simple_roots
    assert np.allclose(a1.coords, [2, -1])
    assert np.allclose(a2.coords, [-1, 0])
    assert np.allclose(R.pi_wt.coords, [-8, 5])


@pytest.mark.parametrize("m,n,ell", DATA)
def test_rho_splits(m, n, ell):
    R = RootDatum(m, n, ell)
    assert R.rho.isclose(R.rho0 - R.rho1)


@pytest.mark.parametrize("m,n,ell", DATA)
def test_rho_pairs_to_half_norm_on_simple_roots(m, n, ell):
    R = RootDatum(m, n, ell)
    for al in R.simple_roots:
        assert abs(R.pairing(R.rho, al) - R.pairing(al, al) / 2) < 1e-12


@settings(max_examples=200)
@given(st.integers(0, 4), st.integers(-24, 24), st.sampled_from([0.0, 0.0137, -0.31]))
def test_typicality_geometric_equals_arithmetic(c, j, shift):
    R = RootDatum(2, 1, 5)
    lam = R.weight_ca([c], j / 8 + shift)
    assert R.is_typical(lam) == R.is_typical_arith(lam)


def test_atypical_witness():
    R = RootDatum(2, 1, 5)
    flag, witness = R.is_typical(R.zero(), return_witness=True)
    assert not flag and witness


def test_alcove_boundary_sl21():
    R = RootDatum(2, 1, 5)
    assert R.in_alcove(R.weight_ca([3], 0.3), strict=True)
    assert R.in_alcove(R.weight_ca([4], 0.3))
    assert not R.in_alcove(R.weight_ca([4], 0.3), strict=True)
    assert not R.in_alcove(R.weight_ca([5], 0.3))


def test_non_integral_c_part_has_no_parts():
    R = RootDatum(2, 1, 5)
    with pytest.raises(NotInAlcove):
        R.c_parts(R.weight_ca([0.5], 0.3))


def test_mixing_data_raises():
    with pytest.raises(MismatchedDatum):
        RootDatum(2, 1, 5).zero() + RootDatum(2, 1, 7).zero()


def test_critical_grading():
    R = RootDatum(2, 1, 5)
    assert R.is_critical(0.5) and R.is_critical(3.0)
    assert not R.is_critical(0.3)


def test_weight_json_roundtrip():
    R = RootDatum(3, 1, 7)
    lam = R.weight_ca([1, 2], 0.3 + 0.2j)
    assert weight_from_json(R, lam.to_json()).isclose(lam)


@given(st.floats(-2, 2, allow_nan=False), st.floats(-2, 2, allow_nan=False))
def test_pairing_bilinear(x, y):
    R = RootDatum(3, 1, 7)
    lam, mu = R.fundamental(1), R.fundamental(3)
    assert abs(R.pairing(lam * x + mu * y, mu) - (x * R.pairing(lam, mu) + y * R.pairing(mu, mu))) < 1e-9
