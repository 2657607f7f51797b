import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relmod import invariants as inv
from relmod.errors import CriticalGrading, DegenerateWeight, NotInAlcove, NotTypical
from relmod.rootdata import RootDatum
from relmod.scalars import RootOfUnity

GENERIC = st.floats(0.05, 0.45).map(lambda x: x + 0.0)


def _proj(R, rng):
    return R.weight(rng.uniform(0.05, 0.95, R.rank) + 1j * rng.uniform(-0.2, 0.2, R.rank))


@pytest.mark.parametrize("m,n,ell", [(2, 1, 5), (3, 1, 7), (1, 2, 5)])
def test_two_open_hopf_formulas_agree(m, n, ell):
    R = RootDatum(m, n, ell)
    rng = np.random.default_rng(1)
    for _ in range(10):
        lam, mu = _proj(R, rng), _proj(R, rng)
        a, b = inv.s_prime(lam, mu), inv.s_prime_via_mdim(lam, mu)
        assert abs(a - b) <= 1e-9 * max(1, abs(a))


@pytest.mark.parametrize("m,n,ell", [(2, 1, 5), (3, 1, 7)])
def test_zeta_term_is_one(m, n, ell):
    R = RootDatum(m, n, ell)
    rng = np.random.default_rng(2)
    for _ in range(10):
        assert abs(inv.zeta_term(_proj(R, rng), _proj(R, rng)) - 1) < 1e-8


def test_mdim_proj_degenerates_on_integral_c_part():
    R = RootDatum(2, 1, 5)
    with pytest.raises(DegenerateWeight):
        inv.mdim_proj(R.weight_ca([1], 0.3))


@settings(max_examples=60)
@given(st.integers(0, 4), GENERIC, st.integers(-3, 3))
def test_mdim_pert_matches_sl21_formula(c, a, k):
    R = RootDatum(2, 1, 5)
    lam = R.weight_ca([c], a + k)
    assert abs(inv.mdim_pert(lam) - inv.mdim_pert_sl21(a + k, c, 5)) < 1e-10


def test_mdim_pert_domain():
    R = RootDatum(2, 1, 5)
    with pytest.raises(NotInAlcove):
        inv.mdim_pert(R.weight_ca([5], 0.3))
    with pytest.raises(NotTypical):
        inv.mdim_pert(R.weight_ca([1], 0.0))
    assert inv.mdim_pert(R.weight_ca([4], 0.3)) == 0


def test_mdim_dispatch():
    R = RootDatum(2, 1, 5)
    lam = R.weight_ca([1], 0.3)
    assert inv.mdim(lam, "pert") == inv.mdim_pert(lam)
    with pytest.raises(ValueError):
        inv.mdim(lam, "other")


@given(st.integers(0, 3), GENERIC)
def test_twist_sl21_matches_weight_formula(c, a):
    R = RootDatum(2, 1, 5)
    assert abs(inv.twist_scalar(R.weight_ca([c], a)) - inv.twist_sl21(a, c, 5)) < 1e-10


def test_hopf_value_symmetric_and_unknot_normalised():
    ell = 5
    h = inv.hopf_value_sl21(0.3, 1, 0.2, 2, ell)
    assert abs(h - inv.hopf_value_sl21(0.2, 2, 0.3, 1, ell)) < 1e-12
    with pytest.raises(NotTypical):
        inv.hopf_value_sl21(0.0, 0, 0.2, 0, ell)


@pytest.mark.parametrize("ell", [5, 7])
def test_perturbative_open_hopf_matches_hopf_value(ell):
    R = RootDatum(2, 1, ell)
    for (a1, c1, a2, c2) in [(0.3, 0, 0.2, 1), (0.15, 2, 0.4, 0), (1.3, 1, -0.35, 3)]:
        lam, mu = R.weight_ca([c1], a1), R.weight_ca([c2], a2)
        val = inv.s_prime_char(lam, mu) * inv.mdim_pert(lam)
        assert abs(val - inv.hopf_value_sl21(a1, c1, a2, c2, ell)) < 1e-9


def test_kirby_color_shape():
    terms = inv.kirby_color_sl21(0.3, 5)
    assert len(terms) == 25
    assert all(t.coeff == 0 for t in terms if t.c == 4)
    assert len(inv.kirby_color_sl21(0.3, 5, drop_zero=True)) == 20
    with pytest.raises(CriticalGrading):
        inv.kirby_color_sl21(0.5, 5)


@pytest.mark.parametrize("ell", [3, 5, 7, 9])
def test_delta_sum_equals_limit_value(ell):
    lim = inv.delta_closed_limit(1, ell)
    assert abs(lim + 2 * ell / RootOfUnity(ell).qnum(1)) < 1e-12
    for a in (0.3 + 0.1j, 0.71, -1.2 + 0.4j):
        assert abs(inv.delta_sum_sl21(1, a, ell) - lim) < 1e-9
        assert abs(inv.delta_sum_sl21(-1, a, ell) - np.conj(lim)) < 1e-9


@pytest.mark.parametrize("ell", [5, 7])
def test_delta_assembled_matches_sum(ell):
    for sign in (1, -1):
        a = 0.27 + 0.05j
        assert abs(inv.delta_assembled_sl21(sign, a, ell) - inv.delta_sum_sl21(sign, a, ell)) < 1e-9


def test_reference_closed_form_differs_from_sum():
    # frozen: the reference closed form is a different number from the sum at ell=5
    assert abs(inv.delta_closed_reference(1, 5) - complex(3.0901699437494745, 4.253254041760199)) < 1e-12
    assert abs(inv.delta_pm_sl21(1, 5) - 5.257311121191336j) < 1e-9


def test_delta_modes_and_sign_validation():
    for mode in inv.DELTA_MODES:
        inv.delta_pm_sl21(1, 5, mode=mode)
    with pytest.raises(ValueError):
        inv.delta_pm_sl21(0, 5)
    with pytest.raises(ValueError):
        inv.delta_pm_sl21(1, 5, mode="nope")


def test_psi_compat_depends_on_a_mod_z():
    R = RootDatum(2, 1, 5)
    assert inv.psi_exponent(R) == -4
    for k in range(-2, 3):
        assert abs(inv.psi_compat(R, 0.3, k) - inv.psi_compat(R, 2.3, k)) < 1e-12
    assert abs(inv.psi_compat(R, 0.3, 1) - cmath.exp(2j * cmath.pi * 0.3 * -4)) < 1e-12


def test_dual_weight_proj_is_involution():
    R = RootDatum(3, 1, 7)
    lam = R.weight([0.2, 0.37, 0.11])
    assert inv.dual_weight_proj(inv.dual_weight_proj(lam)).isclose(lam)


@pytest.mark.parametrize("m,n,ell", [(2, 1, 5), (3, 1, 7), (1, 2, 5), (3, 2, 7)])
def test_dual_weight_mdim_sign(m, n, ell):
    # the dual of V^lam is V^(-pi-lam) tensored with mn odd lines
    R = RootDatum(m, n, ell)
    lam = R.weight([0.31 + 0.1j * k for k in range(R.rank)])
    ratio = inv.mdim_proj(inv.dual_weight_proj(lam)) / inv.mdim_proj(lam)
    assert abs(ratio - (-1) ** (m * n)) < 1e-9
