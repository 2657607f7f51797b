"""The ten acceptance checks, shared by ``relmod verify`` and the test suite.

Every check returns a :class:`CheckResult` with its worst residual, the
tolerance it was held to and a small ``details`` dict. Randomised inputs come
from a seeded :class:`numpy.random.Generator`, so reports are reproducible.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import braiding as br
from . import fusion as fu
from . import invariants as inv
from . import repr_sl21 as rp
from . import tangles as tg
from .rootdata import RootDatum


@dataclass
class CheckResult:
    id: int
    name: str
    passed: bool
    residual: float
    tol: float
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] criterion {self.id:2d} {self.name}: residual={self.residual:.3g} tol={self.tol:.1g}"

    def to_json(self) -> dict:
        """JSON form without the wall-clock time, so reports are reproducible."""
        out = asdict(self)
        out.pop("seconds")
        return _jsonable(out)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


@dataclass(frozen=True)
class SuiteConfig:
    ell: int = 5
    seed: int = 0
    tol: float | None = None  # overrides every per-criterion tolerance

    def pick(self, default: float) -> float:
        return default if self.tol is None else self.tol


def _rng(cfg: SuiteConfig, salt: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, salt])


def _noncritical_reals(rng: np.random.Generator, k: int) -> list[float]:
    """Reals in ``(0, 1)`` kept away from ``0, 1/2, 1``."""
    out = []
    while len(out) < k:
        x = float(rng.uniform(0.05, 0.95))
        if abs(x - 0.5) > 0.05:
            out.append(x)
    return out


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


# 1

def check_delta(cfg: SuiteConfig) -> CheckResult:
    ell, tol_form, tol_indep = cfg.ell, cfg.pick(1e-9), cfg.pick(1e-8)
    rng = _rng(cfg, 1)
    a_vals = _noncritical_reals(rng, 5)
    plus = [inv.delta_sum_sl21(+1, a, ell) for a in a_vals]
    minus = [inv.delta_sum_sl21(-1, a, ell) for a in a_vals]
    ref = inv.delta_closed_reference(+1, ell)
    r_closed = max(abs(p - ref) for p in plus)
    r_indep = max(abs(p - q) for p, q in itertools.combinations(plus, 2))
    r_conj = max(abs(m - np.conj(p)) for p, m in zip(plus, minus))
    prod = abs(plus[0] * minus[0])
    ok = {
        "closed_form": r_closed <= tol_form,
        "a_independence": r_indep <= tol_indep,
        "minus_is_conjugate": r_conj <= tol_indep,
        "nondegenerate": prod > 1e-6,
    }
    details = {
        "a": a_vals,
        "delta_plus_sum": plus[0],
        "delta_plus_closed_reference": ref,
        "delta_plus_limit": inv.delta_closed_limit(+1, ell),
        "delta_plus_times_minus": plus[0] * minus[0],
        "residual_closed_form": r_closed,
        "residual_a_independence": r_indep,
        "residual_conjugate": r_conj,
        "subchecks": ok,
    }
    return CheckResult(1, "Delta_+ identity", all(ok.values()), max(r_closed, r_indep, r_conj), tol_form, details)


# 2

def _typicality_grid(R: RootDatum, count: int) -> list:
    """Evenly spaced sample of ``count`` weights mixing atypical and generic ``a``."""
    ell = R.ell
    special = [k * ell / 2 - s for k in range(-2, 4) for s in range(0, 6)]
    generic = list(np.round(np.linspace(-3.1, 3.3, 60), 6))
    a_vals = sorted(set(special + generic))
    c_grid = list(itertools.product(range(ell + 1), repeat=R.rank - 1))
    pool = list(itertools.product(c_grid, a_vals))
    idx = np.linspace(0, len(pool) - 1, count).round().astype(int)
    out = []
    for i in idx:
        cs, a = pool[i]
        coords = list(cs)
        coords.insert(R.m - 1, a)
        out.append(R.weight(coords))
    return out


def check_typicality(cfg: SuiteConfig) -> CheckResult:
    data = [RootDatum(2, 1, cfg.ell), RootDatum(3, 1, 7)]
    mismatches, counts = [], {}
    for R in data:
        grid = _typicality_grid(R, 500)
        n_atyp = 0
        for w in grid:
            p, q = R.is_typical(w), R.is_typical_arith(w)
            n_atyp += not p
            if p != q:
                mismatches.append((repr(R), w.coords))
        counts[f"{R.m},{R.n},ell={R.ell}"] = {"weights": len(grid), "atypical": n_atyp}
    passed = not mismatches and all(v["weights"] == 500 for v in counts.values())
    return CheckResult(2, "typicality equivalence", passed, float(len(mismatches)), 0.0,
                       {"counts": counts, "mismatches": mismatches[:5]})


# 3

def check_mdim_pert(cfg: SuiteConfig) -> CheckResult:
    tol = cfg.pick(1e-10)
    ell = cfg.ell
    rng = _rng(cfg, 3)
    R = RootDatum(2, 1, ell)
    worst = 0.0
    for _ in range(100):
        alpha = complex(rng.uniform(-2, 2), rng.uniform(-0.5, 0.5))
        c = int(rng.integers(0, min(3, ell - 2) + 1))
        general = inv.mdim_pert(R.weight_ca([c], alpha))
        closed = inv.mdim_pert_sl21(alpha, c, ell)
        worst = max(worst, _rel(general, closed))
    boundary_nonzero, interior_zero = [], []
    for e in (5, 7):
        for m, n in ((2, 1), (3, 1)):
            D = RootDatum(m, n, e)
            for cs in itertools.product(range(e), repeat=D.rank - 1):
                if sum(c + 1 for c in cs) > e:
                    continue
                for alpha in (0.31, -1.17, 0.2 + 0.3j):
                    w = D.weight(list(cs[: m - 1]) + [alpha] + list(cs[m - 1:]))
                    if not D.is_typical(w):
                        continue
                    val = inv.mdim_pert(w)
                    on_boundary = not D.in_alcove(w, strict=True)
                    if on_boundary and val != 0:
                        boundary_nonzero.append((m, n, e, cs, alpha))
                    if not on_boundary and abs(val) < 1e-12:
                        interior_zero.append((m, n, e, cs, alpha))
    passed = worst <= tol and not boundary_nonzero and not interior_zero
    return CheckResult(3, "perturbative modified dimension", passed, worst, tol,
                       {"boundary_nonzero": boundary_nonzero[:5], "interior_zero": interior_zero[:5]})


# 4

def _generic_weight(R: RootDatum, rng: np.random.Generator):
    coords = rng.uniform(-1.5, 1.5, R.rank) + 1j * rng.uniform(-0.3, 0.3, R.rank)
    return R.weight(list(coords))


def check_zeta(cfg: SuiteConfig) -> CheckResult:
    tol = cfg.pick(1e-8)
    rng = _rng(cfg, 4)
    worst, per = 0.0, {}
    for R in (RootDatum(2, 1, cfg.ell), RootDatum(3, 1, 7)):
        w_local = 0.0
        for _ in range(50):
            lam, mu = _generic_weight(R, rng), _generic_weight(R, rng)
            w_local = max(w_local, abs(inv.zeta_term(lam, mu) - 1))
        per[repr(R)] = w_local
        worst = max(worst, w_local)
    return CheckResult(4, "zeta per-term identity", worst <= tol, worst, tol, per)


# 5

def check_representations(cfg: SuiteConfig) -> CheckResult:
    tol = cfg.pick(1e-10)
    ell = cfg.ell
    rng = _rng(cfg, 5)
    worst = rp.check_relations(rp.make_standard(ell), tol).max_residual
    bad_dims = []
    for _ in range(5):
        a = complex(rng.uniform(-2, 2), rng.uniform(-0.3, 0.3))
        for c in range(0, min(3, ell - 2) + 1):
            V = rp.make_typical(a, c, ell, check=False)
            worst = max(worst, rp.check_relations(V, tol).max_residual)
            if V.dim != 4 * (c + 1):
                bad_dims.append((a, c, V.dim))
    return CheckResult(5, "representation engine", worst <= tol and not bad_dims, worst, tol,
                       {"bad_dims": bad_dims})


# 6

def check_braiding(cfg: SuiteConfig) -> CheckResult:
    tol, tol_tw = cfg.pick(1e-9), cfg.pick(1e-10)
    ell = cfg.ell
    rng = _rng(cfg, 6)
    v = rp.make_standard(ell)
    a, b = _noncritical_reals(rng, 2)
    Va, Vb = rp.make_typical(a, 0, ell), rp.make_typical(-b, 0, ell)
    res = {
        "ybe_vvv": br.ybe_residual(v, v, v),
        "ybe_VvV": br.ybe_residual(Va, v, Vb),
    }
    for tag, triple in (("vvv", (v, v, v)), ("VvV", (Va, v, Vb))):
        for k, r in br.check_quasitriangular(*triple).residuals.items():
            res[f"quasitriangular{k}_{tag}"] = r
    tw = 0.0
    for _ in range(20):
        alpha = float(rng.uniform(-2, 2))
        c = int(rng.integers(0, min(3, ell - 2) + 1))
        V = rp.make_typical(alpha, c, ell, check=False)
        th = br.twist_op(V)
        lam = V.highest
        expect = inv.twist_scalar(lam)
        tw = max(tw, np.abs(th - expect * np.eye(V.dim)).max(), abs(expect - inv.twist_sl21(alpha, c, ell)))
    res["twist"] = tw
    passed = max(v_ for k, v_ in res.items() if k != "twist") <= tol and tw <= tol_tw
    return CheckResult(6, "braiding suite", passed, max(res.values()), tol, res)


# 7

def check_fusion(cfg: SuiteConfig) -> CheckResult:
    ell = cfg.ell
    rng = _rng(cfg, 7)
    R = RootDatum(2, 1, ell)
    a, b = _noncritical_reals(rng, 2)
    if R.is_critical(a + b):
        b += 0.13
    summands = fu.tensor_decompose_zero(R, a, b)
    dims = [fu.envelope_dim(R, w) for w in summands]
    predicted_par = [fu.summand_parity(lam, 2, 1) for lam in fu.diagrams_in_box(2, 1)]
    T = rp.tensor(rp.make_typical(a, 0, ell), rp.make_typical(b, 0, ell))
    hw = rp.highest_weight_vectors(T)
    found = [(w, p) for w, p, basis in hw for _ in range(basis.shape[1])]
    at_predicted = sorted(any(w.isclose(s) for s in summands) for w, _ in found)
    even_found = sum(1 for _, p in found if p == 0)
    conv = fu.envelope_character(R, R.weight_ca([0], a)) * fu.envelope_character(R, R.weight_ca([0], b))
    direct = fu.Character(R)
    for w, p in zip(summands, predicted_par):
        direct = direct + fu.envelope_character(R, w).shifted(R.zero(), p)
    char_ok = conv.counts() == direct.counts()
    pieri = fu.pieri_step(R, [R.weight_ca([0], a)])
    pieri_dims = sorted(fu.envelope_dim(R, w) for w in pieri)
    ok = {
        "three_typical_summands": len(summands) == 3 and all(R.is_typical(w) for w in summands),
        "envelope_dims_4_8_4": dims == [4, 8, 4],
        "three_hw_vectors_at_predicted_weights": len(found) == 3 and all(at_predicted),
        "hw_vectors_all_even": even_found == 3,
        "character_convolution": char_ok,
        "pieri_4x3_eq_8_plus_4": pieri_dims == [4, 8] and 4 * 3 == sum(pieri_dims),
    }
    details = {
        "a": a, "b": b,
        "summands": [w.coords for w in summands],
        "dims": dims,
        "hw_found": [(w.coords, p) for w, p in found],
        "hw_parities_predicted": predicted_par,
        "even_hw_count": even_found,
        "subchecks": ok,
    }
    return CheckResult(7, "fusion", all(ok.values()), float(sum(not x for x in ok.values())), 0.0, details)


# 8

def check_hopf(cfg: SuiteConfig) -> CheckResult:
    tol = cfg.pick(1e-9)
    ell = cfg.ell
    rng = _rng(cfg, 8)
    ev = tg.Evaluator(ell)
    worst_formula, worst_cut = 0.0, 0.0
    for _ in range(10):
        a1, a2 = _noncritical_reals(rng, 2)
        a1 += int(rng.integers(-1, 2))
        c1, c2 = (int(x) for x in rng.integers(0, min(2, ell - 2) + 1, size=2))
        V, W = tg.typical(a1, c1), tg.typical(a2, c2)
        cut_v = tg.f_prime(tg.hopf_tangle(V, W), ell, ev=ev)
        cut_w = tg.f_prime(tg.hopf_tangle(W, V), ell, ev=ev)
        formula = inv.hopf_value_sl21(a1, c1, a2, c2, ell)
        worst_formula = max(worst_formula, _rel(cut_v, formula))
        worst_cut = max(worst_cut, _rel(cut_v, cut_w))
    worst = max(worst_formula, worst_cut)
    return CheckResult(8, "Hopf link", worst <= tol, worst, tol,
                       {"formula": worst_formula, "cut_independence": worst_cut})


# 9

def check_free_realization(cfg: SuiteConfig) -> CheckResult:
    tol = cfg.pick(1e-10)
    ell = cfg.ell
    R = rp.sl21(ell)
    ev = tg.Evaluator(ell)
    res = {"tensor_iso": 0.0, "twist": 0.0, "qdim": 0.0, "double_braiding": 0.0}
    for (k1, z1), (k2, z2) in itertools.product(itertools.product(range(-2, 3), (0, 1)), repeat=2):
        s1 = rp.make_sigma(z1, rp.sigma_weight(ell, k1))
        s2 = rp.make_sigma(z2, rp.sigma_weight(ell, k2))
        s12 = rp.make_sigma((z1 + z2) % 2, rp.sigma_weight(ell, k1 + k2))
        T = rp.tensor(s1, s2)
        iso = np.eye(1)  # the evident map sigma(z) (x) sigma(z') -> sigma(z + z')
        r = 0.0 if (T.weights[0].isclose(s12.weights[0]) and T.parities[0] == s12.parities[0]) else 1.0
        for name in rp.GENS:
            r = max(r, np.abs(iso @ T.gen(name) - s12.gen(name) @ iso).max())
        res["tensor_iso"] = max(res["tensor_iso"], r)
    for k, z in itertools.product(range(-2, 3), (0, 1)):
        col = tg.Color("sigma", k=k, zbar=z)
        S = ev.module(tg.Strand(col))
        res["twist"] = max(res["twist"], abs(br.twist_op(S)[0, 0] - 1))
        unknot = tg.MorseDiagram([], [tg.Slice("cup", 0, col), tg.Slice("capP", 0)])
        res["qdim"] = max(res["qdim"], abs(ev.evaluate(unknot)[0, 0] - (-1) ** z))
    rng = _rng(cfg, 9)
    for a in _noncritical_reals(rng, 3):
        for c in range(0, 2):
            V = rp.make_typical(a, c, ell, check=False)
            for k, z in itertools.product(range(-2, 3), (0, 1)):
                S = rp.make_sigma(z, rp.sigma_weight(ell, k))
                D = br.double_braiding(V, S)
                psi = inv.psi_compat(R, a, k)
                res["double_braiding"] = max(res["double_braiding"], np.abs(D - psi * np.eye(D.shape[0])).max())
    worst = max(res.values())
    return CheckResult(9, "free realization and compatibility", worst <= tol, worst, tol, res)


# 10

def check_surgery(cfg: SuiteConfig) -> CheckResult:
    tol = cfg.pick(1e-8)
    ell = cfg.ell
    rng = _rng(cfg, 10)
    ev = tg.Evaluator(ell)
    a, b = _noncritical_reals(rng, 2)
    V, W = tg.typical(a, 0), tg.typical(b, 1)
    base = tg.cgp_invariant(tg.bare(V), ell, ev)
    res, values = {}, {"bare": base}
    for sign in (1, -1):
        val = tg.cgp_invariant(tg.stabilized(V, sign), ell, ev)
        values[f"stabilized{sign:+d}"] = val
        res[f"stabilization{sign:+d}"] = _rel(val, base)
    P1, P2 = tg.slide_pair(V, W, 1)
    v1, v2 = tg.cgp_invariant(P1, ell, ev), tg.cgp_invariant(P2, ell, ev)
    values.update(slide_first=v1, slide_second=v2)
    res["handle_slide"] = _rel(v1, v2)
    worst = max(res.values())
    return CheckResult(10, "surgery invariant sanity", worst <= tol, worst, tol, {**res, "values": values})


CHECKS = (check_delta, check_typicality, check_mdim_pert, check_zeta, check_representations,
          check_braiding, check_fusion, check_hopf, check_free_realization, check_surgery)


def run_all(cfg: SuiteConfig = SuiteConfig(), only: list[int] | None = None) -> list[CheckResult]:
    out = []
    for i, fn in enumerate(CHECKS, start=1):
        if only and i not in only:
            continue
        t = time.perf_counter()
        r = fn(cfg)
        r.seconds = time.perf_counter() - t
        out.append(r)
    return out


def report(results: list[CheckResult], cfg: SuiteConfig) -> dict:
    return {
        "config": {"m": 2, "n": 1, "ell": cfg.ell, "seed": cfg.seed, "tol_override": cfg.tol},
        "passed": all(r.passed for r in results),
        "checks": [r.to_json() for r in results],
    }
