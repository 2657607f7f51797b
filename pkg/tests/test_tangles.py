import json

import numpy as np
import pytest

from relmod import invariants as inv
from relmod import tangles as tg
from relmod.errors import ConfigError, CriticalGrading, IllFormedDiagram, NotSimple
from relmod.tangles import Color, MorseDiagram, Slice, Strand

ELL = 5
A = tg.typical(0.3 + 0.05j, 1)
B = tg.typical(0.45, 0)
STD = Color("standard")
SIG = Color("sigma", k=1, zbar=1)


@pytest.fixture(scope="module")
def ev():
    return tg.Evaluator(ELL)


def S(op, pos, color=None):
    return Slice(op, pos, color)


def _pairs():
    """(name, lhs, rhs) of isotopic diagrams."""
    out = []
    for X, Y in [(A, B), (A, STD), (STD, SIG), (B, B)]:
        b = [Strand(X), Strand(Y)]
        out.append((f"R2+ {X.kind}/{Y.kind}", MorseDiagram(b, [S("crossP", 0), S("crossN", 0)]), MorseDiagram(b)))
        out.append((f"R2- {X.kind}/{Y.kind}", MorseDiagram(b, [S("crossN", 0), S("crossP", 0)]), MorseDiagram(b)))
    for X, Y, Z in [(A, B, STD), (STD, STD, STD), (B, SIG, A)]:
        b = [Strand(X), Strand(Y), Strand(Z)]
        for op in ("crossP", "crossN"):
            out.append((f"R3 {op} {X.kind}/{Y.kind}/{Z.kind}",
                        MorseDiagram(b, [S(op, 0), S(op, 1), S(op, 0)]),
                        MorseDiagram(b, [S(op, 1), S(op, 0), S(op, 1)])))
    for X in (A, STD, SIG):
        v, vd = [Strand(X)], [Strand(X, True)]
        out.append((f"zigzag cupP/capP {X.kind}", MorseDiagram(v, [S("cupP", 1, X), S("capP", 0)]), MorseDiagram(v)))
        out.append((f"zigzag cup/cap {X.kind}", MorseDiagram(v, [S("cup", 0, X), S("cap", 1)]), MorseDiagram(v)))
        out.append((f"zigzag dual cup/cap {X.kind}", MorseDiagram(vd, [S("cup", 1, X), S("cap", 0)]), MorseDiagram(vd)))
        out.append((f"zigzag dual cupP/capP {X.kind}", MorseDiagram(vd, [S("cupP", 0, X), S("capP", 1)]),
                    MorseDiagram(vd)))
        out.append((f"twist pair {X.kind}", MorseDiagram(v, [S("twistP", 0), S("twistN", 0)]), MorseDiagram(v)))
        out.append((f"curl is twist {X.kind}",
                    MorseDiagram(v, [S("cup", 1, X), S("crossP", 0), S("capP", 1)]),
                    MorseDiagram(v, [S("twistP", 0)])))
    return out


PAIRS = _pairs()


def test_battery_is_large():
    assert len(PAIRS) >= 10


@pytest.mark.parametrize("name,lhs,rhs", PAIRS, ids=[p[0] for p in PAIRS])
def test_isotopy_invariance(ev, name, lhs, rhs):
    L, R = ev.evaluate(lhs), ev.evaluate(rhs)
    assert L.shape == R.shape
    assert np.max(np.abs(L - R)) < 1e-9


@pytest.mark.parametrize("col", [A, B, tg.typical(-0.2, 3)])
@pytest.mark.parametrize("caps", [("cup", "capP"), ("cupP", "cap")])
def test_unknot_vanishes_for_typicals(ev, col, caps):
    d = MorseDiagram([], [S(caps[0], 0, col), S(caps[1], 0)])
    assert abs(ev.evaluate(d)[0, 0]) < 1e-9


def test_standard_unknot_is_superdimension(ev):
    d = MorseDiagram([], [S("cup", 0, STD), S("capP", 0)])
    assert abs(ev.evaluate(d)[0, 0] - 1) < 1e-9


@pytest.mark.parametrize("V,W", [(A, B), (tg.typical(0.3, 2), tg.typical(-0.15, 1)), (B, tg.typical(1.3, 3))])
def test_cut_independence(ev, V, W):
    a = tg.f_prime(tg.hopf_tangle(V, W), ELL, ev=ev)
    b = tg.f_prime(tg.hopf_tangle(W, V), ELL, ev=ev)
    assert abs(a - b) < 1e-9 * max(1, abs(a))
    assert abs(a - inv.hopf_value_sl21(V.a, V.c, W.a, W.c, ELL)) < 1e-9


def test_framed_unknot_components(ev):
    d = MorseDiagram([Strand(A)], tg.encircle([Strand(A)], B, framing=2))
    want = inv.twist_sl21(B.a, B.c, ELL) ** 2 * inv.hopf_value_sl21(A.a, A.c, B.a, B.c, ELL)
    assert abs(tg.f_prime(d, ELL, ev=ev) - want) < 1e-9


def test_ill_formed_diagrams():
    with pytest.raises(IllFormedDiagram):
        MorseDiagram([Strand(A)], [S("crossP", 0)]).boundaries()
    with pytest.raises(IllFormedDiagram):
        MorseDiagram([Strand(A), Strand(B, True)], [S("cap", 0)]).boundaries()
    with pytest.raises(IllFormedDiagram):
        MorseDiagram([Strand(A), Strand(A, True)], [S("cap", 0)]).boundaries()
    with pytest.raises(IllFormedDiagram):
        MorseDiagram([], [S("cup", 0)]).boundaries()
    with pytest.raises(IllFormedDiagram):
        MorseDiagram([], [S("warp", 0)]).boundaries()


def test_f_prime_domain():
    d = tg.hopf_tangle(A, B)
    with pytest.raises(ConfigError):
        tg.f_prime(d, ELL, ideal="proj")
    with pytest.raises(IllFormedDiagram):
        tg.f_prime(MorseDiagram([Strand(A), Strand(B)]), ELL)
    with pytest.raises(NotSimple):
        tg.f_prime(MorseDiagram([Strand(STD)]), ELL)


def test_omega_needs_expansion():
    d = tg.hopf_tangle(A, tg.omega(0.3, "K"))
    with pytest.raises(IllFormedDiagram):
        tg.evaluate(d, ELL)
    terms = tg.expand_kirby(d, ELL)
    assert len(terms) == 20
    assert all(not tg.omega_labels(sub) for _, sub in terms)


def test_json_roundtrip(tmp_path):
    p = tg.stabilized(A, 1)
    path = tmp_path / "d.json"
    path.write_text(json.dumps(p.to_json()))
    q = tg.SurgeryPresentation.from_json(tg.load_json(str(path)))
    assert q.diagram.to_json() == p.diagram.to_json()
    assert np.allclose(q.linking_matrix, p.linking_matrix)


def test_cgp_stabilisation_and_slide(ev):
    base = tg.cgp_invariant(tg.bare(A), ELL, ev)
    assert abs(base - inv.mdim_pert_sl21(A.a, A.c, ELL)) < 1e-12
    for sign in (1, -1):
        assert abs(tg.cgp_invariant(tg.stabilized(A, sign), ELL, ev) - base) < 1e-8 * abs(base)
    P1, P2 = tg.slide_pair(A, B, 1)
    v1, v2 = tg.cgp_invariant(P1, ELL, ev), tg.cgp_invariant(P2, ELL, ev)
    assert abs(v1 - v2) < 1e-8 * max(1, abs(v1))


def test_cgp_rejects_critical_grading():
    p = tg.SurgeryPresentation(tg.hopf_tangle(A, tg.omega(0.5, "K")), np.array([[1.0]]))
    with pytest.raises(CriticalGrading):
        tg.cgp_invariant(p, ELL)


def test_linking_matrix_validation():
    with pytest.raises(IllFormedDiagram):
        tg.SurgeryPresentation(tg.hopf_tangle(A, tg.omega(0.3, "K")), np.zeros((0, 0)))
    with pytest.raises(IllFormedDiagram):
        tg.SurgeryPresentation(tg.bare(A).diagram, np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_admissible_grading():
    assert tg.admissible_grading([Strand(A)], 1) == -A.a
    assert tg.admissible_grading([Strand(A), Strand(B)], -1) == A.a + B.a
    assert tg.grading(Strand(A, True)) == -A.a


def test_two_omega_components_expand_multilinearly():
    d = MorseDiagram([Strand(A)], tg.encircle([Strand(A)], tg.omega(0.3, "K1"))
                     + tg.encircle([Strand(A)], tg.omega(0.2, "K2")))
    assert len(tg.expand_kirby(d, ELL)) == 400
    assert len(tg.expand_kirby(tg.bare(A).diagram, ELL)) == 1
