import numpy as np
import pytest

from relmod import braiding as br
from relmod import invariants as inv
from relmod import repr_sl21 as rp

ELL = 5


@pytest.fixture(scope="module")
def mods():
    return {
        "v": rp.make_standard(ELL),
        "A": rp.make_typical(0.3 + 0.05j, 1, ELL),
        "B": rp.make_typical(0.45, 0, ELL),
        "s": rp.make_sigma(1, rp.sigma_weight(ELL, 1)),
    }


@pytest.mark.parametrize("names", [("v", "v", "v"), ("A", "v", "B"), ("v", "A", "s"), ("B", "B", "v")])
def test_yang_baxter(mods, names):
    assert br.ybe_residual(*(mods[k] for k in names)) < 1e-9


@pytest.mark.parametrize("names", [("v", "v", "v"), ("A", "v", "B"), ("v", "B", "v")])
def test_quasitriangular(mods, names):
    rep = br.check_quasitriangular(*(mods[k] for k in names))
    assert rep.passed, rep.residuals


@pytest.mark.parametrize("a,c", [(0.3, 0), (0.17 + 0.1j, 2), (-0.4, 3)])
def test_twist_matches_formula(a, c):
    V = rp.make_typical(a, c, ELL)
    T = br.twist_op(V)
    th = inv.twist_scalar(V.highest)
    assert np.allclose(T, th * np.eye(V.dim), atol=1e-9)


def test_twist_of_standard_is_scalar(mods):
    v = mods["v"]
    T = br.twist_op(v)
    assert np.allclose(T, T[0, 0] * np.eye(3), atol=1e-12)
    assert abs(T[0, 0] - inv.twist_scalar(v.highest)) < 1e-12


def test_balancing(mods):
    A, v = mods["A"], mods["v"]
    lhs = br.twist_op(rp.tensor(A, v))
    rhs = br.double_braiding(A, v) @ np.kron(br.twist_op(A), br.twist_op(v))
    assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_braiding_inverse(mods):
    A, v = mods["A"], mods["v"]
    assert np.allclose(br.braiding_inv(A, v) @ br.braiding(v, A), np.eye(A.dim * v.dim))


def test_naturality_along_scalar_map(mods):
    A, v = mods["A"], mods["v"]
    f = 2.5 * np.eye(A.dim)
    assert br.naturality_residual(f, A, A, v) < 1e-9


def test_zigzag_identities(mods):
    V = mods["A"]
    n = V.dim
    I = np.eye(n)
    z1 = np.kron(I, br.ev_left(V)) @ np.kron(br.coev_left(V), I)
    z2 = np.kron(br.ev_right(V), I) @ np.kron(I, br.coev_right(V))
    assert np.allclose(z1, I) and np.allclose(z2, I)


def test_open_hopf_matches_hopf_value():
    V, W = rp.make_typical(0.3, 1, ELL), rp.make_typical(0.2, 0, ELL)
    M = br.open_hopf_op(V, W)
    s = M[0, 0]
    assert np.allclose(M, s * np.eye(V.dim), atol=1e-9)
    d = inv.mdim_pert_sl21(0.3, 1, ELL)
    assert abs(s * d - inv.hopf_value_sl21(0.3, 1, 0.2, 0, ELL)) < 1e-9


def test_double_braiding_with_sigma_is_psi(mods):
    A, s = mods["A"], mods["s"]
    M = br.double_braiding(A, s)
    a = A.highest.a
    assert np.allclose(M, M[0, 0] * np.eye(A.dim), atol=1e-9)
    assert abs(M[0, 0] - np.exp(2j * np.pi * (-4 * ELL * a * 1) / ELL)) < 1e-9


def test_calibration_recovers_frozen_conventions():
    conv, res = br.calibrate(ELL, powers=range(-1, 1))
    assert res < 1e-9
    for root in br.ROOT_ORDER:
        assert abs(conv.a(root, ELL) - br.CONVENTIONS.a(root, ELL)) < 1e-12
