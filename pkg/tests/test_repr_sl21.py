import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relmod import repr_sl21 as rp
from relmod.errors import NotInAlcove, NotInLambdaZ, NotTypical
from relmod.fusion import envelope_character

ELL = 5


@pytest.mark.parametrize("c", range(ELL - 1))
def test_typical_relations_and_dimension(c):
    V = rp.make_typical(0.3 + 0.1j, c, ELL)
    assert V.dim == 4 * (c + 1)
    rep = rp.check_relations(V)
    assert rep.passed, rep.residuals


@settings(max_examples=15, deadline=None)
@given(st.floats(0.05, 0.95), st.integers(0, 3))
def test_typical_is_simple(a, c):
    V = rp.make_typical(a, c, ELL)
    assert rp.is_simple(V)


def test_typical_weights_match_character():
    R = rp.sl21(ELL)
    V = rp.make_typical(0.3, 2, ELL)
    ch = envelope_character(R, R.weight_ca([2], 0.3))
    want = {tuple(np.round(np.array(w.coords), 9)): (e, o) for w, e, o in ch.items()}
    assert rp.weight_multiset(V) == want


def test_typical_domain_errors():
    with pytest.raises(NotTypical):
        rp.make_typical(0.0, 0, ELL)
    with pytest.raises(NotInAlcove):
        rp.make_typical(0.3, ELL - 1, ELL)


@pytest.mark.parametrize("make", [rp.make_standard, rp.make_trivial, rp.make_odd_trivial, rp.make_epsilon])
def test_small_modules(make):
    assert rp.check_relations(make(ELL)).passed


def test_standard_is_simple_with_one_hw_vector():
    v = rp.make_standard(ELL)
    assert rp.is_simple(v)
    hw = rp.highest_weight_vectors(v)
    assert len(hw) == 1 and hw[0][1] == 0


def test_sigma_requires_lambda_z():
    R = rp.sl21(ELL)
    assert rp.check_relations(rp.make_sigma(1, rp.sigma_weight(ELL, 2))).passed
    with pytest.raises(NotInLambdaZ):
        rp.make_sigma(0, R.weight([0, 0.3]))


def test_epsilon_has_trivial_cartan():
    E = rp.make_epsilon(ELL)
    assert np.allclose(E.K(1), 1) and np.allclose(E.K(2), 1)


@pytest.mark.parametrize("c", [0, 2])
def test_dual_is_typical_envelope(c):
    a = 0.27
    D = rp.dual(rp.make_typical(a, c, ELL))
    assert rp.check_relations(D).passed
    target = rp.make_typical(rp.typical_dual_alpha(a, c), c, ELL)
    assert rp.weight_multiset(D) == rp.weight_multiset(target)


def test_tensor_relations():
    V = rp.tensor(rp.make_typical(0.3, 1, ELL), rp.make_standard(ELL))
    assert rp.check_relations(V).passed


def test_flip_is_involutive_and_even():
    V, W = rp.make_typical(0.3, 0, ELL), rp.make_standard(ELL)
    assert np.allclose(rp.flip(W, V) @ rp.flip(V, W), np.eye(V.dim * W.dim))


def test_tensor_of_typicals_hw_vectors():
    V = rp.tensor(rp.make_typical(0.3, 0, ELL), rp.make_typical(0.4, 0, ELL))
    hw = rp.highest_weight_vectors(V)
    assert sum(b.shape[1] for _, _, b in hw) == 3
    assert sorted(p for _, p, _ in hw) == [0, 0, 1]


def test_root_vectors_are_odd_and_nilpotent():
    V = rp.make_typical(0.3, 1, ELL)
    for name in ("E12", "F12"):
        M = V.gen(name)
        assert np.allclose(V.P @ M @ V.P, -M)
        assert np.allclose(M @ M, 0)


def test_module_json():
    V = rp.make_standard(ELL)
    obj = V.to_json()
    assert obj["dim"] == 3 and obj["parities"] == [0, 0, 1]
    assert isinstance(V.dumps(), str)
