"""Explicit modules over the unrolled quantum group of sl(2|1) at an odd root of unity.

Generators ``E1, F1`` are even and ``E2, F2`` are odd; ``K_i = xi**(H_i)``
(both signs ``d_i`` equal +1). The coproduct is

    Delta(E) = E (x) 1 + K**-1 (x) E,    Delta(F) = F (x) K + 1 (x) F,

acting on super tensor products with the Koszul rule
``(a (x) b)(v (x) w) = (-1)**(|b||v|) a v (x) b w``.

Typical modules are built by normal ordering words
``F2**e2 F12**e12 F1**k v+`` where ``F12 = F1 F2 - xi**-1 F2 F1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NotInAlcove, NotInLambdaZ, NotTypical
from .rootdata import RootDatum, Weight

GENS = ("E1", "E2", "F1", "F2")
PARITY = {"E1": 0, "F1": 0, "E2": 1, "F2": 1, "E12": 1, "F12": 1}


@dataclass(eq=False)
class WeightModule:
    """Finite-dimensional weight module with a homogeneous basis.

    Attributes
    ----------
    datum : RootDatum
        Always ``sl(2|1)`` here.
    weights : list of Weight
        Weight of each basis vector.
    parities : ndarray of int
        Parity (0 even, 1 odd) of each basis vector.
    E, F : dict
        Matrices of ``E1, E2`` and ``F1, F2`` keyed by 1 and 2.
    label : str
        Provenance of the construction.
    """

    datum: RootDatum
    weights: list
    parities: np.ndarray
    E: dict
    F: dict
    label: str = ""
    highest: Weight | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def ell(self) -> int:
        return self.datum.ell

    def H(self, i: int) -> np.ndarray:
        return np.diag([w.coords[i - 1] for w in self.weights]).astype(complex)

    def K(self, i: int, power: int = 1) -> np.ndarray:
        xi = self.datum.root_of_unity
        d = self.datum.d[i - 1]
        return np.diag([xi.pow(power * d * w.coords[i - 1]) for w in self.weights])

    @property
    def P(self) -> np.ndarray:
        """Parity operator ``(-1)**|v|``."""
        return np.diag((-1.0) ** self.parities).astype(complex)

    def gen(self, name: str) -> np.ndarray:
        """Matrix of ``E1, E2, F1, F2, E12, F12``."""
        if name in self._cache:
            return self._cache[name]
        if name[0] in "EF" and name[1:] in ("1", "2"):
            mat = (self.E if name[0] == "E" else self.F)[int(name[1:])]
        elif name == "E12":
            mat = root_vector_E12(self)
        elif name == "F12":
            mat = root_vector_F12(self)
        else:
            raise KeyError(name)
        self._cache[name] = mat
        return mat

    def weight_keys(self) -> list:
        return [tuple(np.round(np.array(w.coords), 9)) for w in self.weights]

    def to_json(self) -> dict:
        def cm(a):
            return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a)]
        return {
            "label": self.label,
            "ell": self.ell,
            "dim": self.dim,
            "weights": [w.to_json() for w in self.weights],
            "parities": [int(p) for p in self.parities],
            "matrices": {f"{X}{i}": cm((self.E if X == "E" else self.F)[i]) for X in "EF" for i in (1, 2)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def sl21(ell: int) -> RootDatum:
    return _sl21(ell)


@lru_cache(maxsize=None)
def _sl21(ell: int) -> RootDatum:
    return RootDatum(2, 1, ell)


# root vectors

E12_EXP = -1  # E12 = E1 E2 - xi**E12_EXP E2 E1
F12_EXP = -1  # F12 = F1 F2 - xi**F12_EXP F2 F1


def root_vector_E12(V: WeightModule) -> np.ndarray:
    xi = V.datum.root_of_unity
    E1, E2 = V.E[1], V.E[2]
    return E1 @ E2 - xi.pow(E12_EXP) * E2 @ E1


def root_vector_F12(V: WeightModule) -> np.ndarray:
    xi = V.datum.root_of_unity
    F1, F2 = V.F[1], V.F[2]
    return F1 @ F2 - xi.pow(F12_EXP) * F2 @ F1


# normal ordering engine for typical modules

_ORDER = {"F2": 0, "F12": 1, "F1": 2}


class _Rewriter:
    """Normal ordering of ``X . F2**e2 F12**e12 F1**k v+`` for a highest weight ``(c, a)``.

    Letters are generator names or Cartan letters ``("K", i, s)`` and
    ``("B", i)`` with ``B_i = (K_i - K_i**-1)/(xi - xi**-1)``. Cartan letters act
    by scalars on weight vectors. Words are tuples ``(e2, e12, k)``.
    """

    def __init__(self, datum: RootDatum, c: int, a: complex):
        self.R = datum
        self.xi = datum.root_of_unity
        self.c = c
        self.a = a
        xi_m1 = self.xi.pow(-1)
        xi_p1 = self.xi.pow(1)
        self.rules = {
            ("F12", "F2"): [(-xi_m1, ["F2", "F12"])],
            ("F1", "F2"): [(1, ["F12"]), (xi_m1, ["F2", "F1"])],
            ("F1", "F12"): [(xi_p1, ["F12", "F1"])],
            ("E1", "F2"): [(1, ["F2", "E1"])],
            ("E1", "F12"): [(1, ["F12", "E1"]), (1, ["F2", ("K", 1, 1)])],
            ("E1", "F1"): [(1, ["F1", "E1"]), (1, [("B", 1)])],
            ("E2", "F2"): [(-1, ["F2", "E2"]), (1, [("B", 2)])],
            ("E2", "F12"): [(-1, ["F12", "E2"]), (-xi_m1, ["F1", ("K", 2, -1)])],
            ("E2", "F1"): [(1, ["F1", "E2"])],
        }

    def word_letters(self, w):
        e2, e12, k = w
        return ["F2"] * e2 + ["F12"] * e12 + ["F1"] * k

    def weight_coords(self, w):
        e2, e12, k = w
        a1 = np.array([2, -1])
        a2 = np.array([-1, 0])
        shift = k * a1 + e12 * (a1 + a2) + e2 * a2
        return np.array([self.c, self.a], dtype=complex) - shift

    def cartan_scalar(self, letter, w) -> complex:
        mu = self.weight_coords(w)
        if letter[0] == "K":
            _, i, s = letter
            return self.xi.pow(s * mu[i - 1])
        _, i = letter
        return self.xi.qnum(mu[i - 1]) / self.xi.qnum(1)

    def apply(self, X, vec: dict) -> dict:
        out: dict = {}
        for w, coeff in vec.items():
            for w2, c2 in self._apply_word(X, w).items():
                out[w2] = out.get(w2, 0) + coeff * c2
        return {w: c for w, c in out.items() if c != 0}

    def eval_letters(self, letters, w) -> dict:
        vec = {w: 1.0 + 0j}
        for X in reversed(letters):
            vec = self.apply(X, vec)
            if not vec:
                break
        return vec

    def _apply_word(self, X, w) -> dict:
        if isinstance(X, tuple):
            return {w: self.cartan_scalar(X, w)}
        e2, e12, k = w
        letters = self.word_letters(w)
        if not letters:
            if X.startswith("E"):
                return {}
            return self._normal_prepend(X, w)
        Y = letters[0]
        rest = self._strip_first(w)
        if X.startswith("F") and _ORDER[X] <= _ORDER[Y]:
            return self._normal_prepend(X, w)
        out: dict = {}
        for coeff, rhs in self.rules[(X, Y)]:
            for w2, c2 in self.eval_letters(rhs, rest).items():
                out[w2] = out.get(w2, 0) + coeff * c2
        return out

    def _strip_first(self, w):
        e2, e12, k = w
        if e2:
            return (0, e12, k)
        if e12:
            return (0, 0, k)
        return (0, 0, k - 1)

    def _normal_prepend(self, X, w) -> dict:
        e2, e12, k = w
        if X == "F2":
            return {} if e2 else {(1, e12, k): 1.0 + 0j}
        if X == "F12":
            return {} if (e12 or e2) else {(0, 1, k): 1.0 + 0j}
        if X == "F1":
            if e2 or e12:
                raise AssertionError("not a prepend")
            return {} if k + 1 > self.c else {(0, 0, k + 1): 1.0 + 0j}
        raise AssertionError(X)


def typical_basis(c: int) -> list[tuple[int, int, int]]:
    """Basis words ``(e2, e12, k)``, ordered by depth then lexicographically."""
    words = [(e2, e12, k) for k in range(c + 1) for e2 in (0, 1) for e12 in (0, 1)]
    return sorted(words, key=lambda w: (w[2] + w[1], w[0] + w[1], w))


def make_typical(a: complex, c: int, ell: int, check: bool = True) -> WeightModule:
    """Typical envelope ``V(lambda_a^c)`` of dimension ``4(c+1)``.

    Parameters
    ----------
    a : complex
        The odd-node coordinate of the highest weight.
    c : int
        Even-node coordinate, ``0 <= c <= ell - 2``.
    ell : int
        Order of the root of unity.
    check : bool
        Reject atypical weights.
    """
    R = sl21(ell)
    if not (0 <= c <= ell - 2):
        raise NotInAlcove(f"c={c} must satisfy 0 <= c <= ell-2")
    lam = R.weight_ca([c], a)
    if check and not R.is_typical(lam):
        raise NotTypical(f"lambda = (c={c}, a={a}) is atypical")
    rw = _Rewriter(R, c, complex(a))
    basis = typical_basis(c)
    index = {w: i for i, w in enumerate(basis)}
    N = len(basis)
    mats = {}
    for X in GENS:
        M = np.zeros((N, N), dtype=complex)
        for j, w in enumerate(basis):
            for w2, coeff in rw.apply(X, {w: 1.0 + 0j}).items():
                M[index[w2], j] += coeff
        mats[X] = M
    weights = [R.weight(rw.weight_coords(w)) for w in basis]
    parities = np.array([(w[0] + w[1]) % 2 for w in basis])
    return WeightModule(R, weights, parities, {1: mats["E1"], 2: mats["E2"]},
                        {1: mats["F1"], 2: mats["F2"]}, label=f"V(a={a}, c={c})", highest=lam)


def make_standard(ell: int) -> WeightModule:
    """Three-dimensional standard module with parities (even, even, odd)."""
    R = sl21(ell)

    def unit(i, j):
        M = np.zeros((3, 3), dtype=complex)
        M[i, j] = 1
        return M

    H1 = [1, -1, 0]
    H2 = [0, 1, 1]
    weights = [R.weight([H1[i], H2[i]]) for i in range(3)]
    return WeightModule(R, weights, np.array([0, 0, 1]), {1: unit(0, 1), 2: unit(1, 2)},
                        {1: unit(1, 0), 2: unit(2, 1)}, label="standard", highest=weights[0])


def _one_dim(R: RootDatum, lam: Weight, parity: int, label: str) -> WeightModule:
    Z = np.zeros((1, 1), dtype=complex)
    return WeightModule(R, [lam], np.array([parity % 2]), {1: Z, 2: Z.copy()}, {1: Z.copy(), 2: Z.copy()},
                        label=label, highest=lam)


def in_lambda_z(lam: Weight, tol: float = 1e-9) -> bool:
    """``2 <lam, alpha_i> in ell Z`` for all simple roots."""
    R = lam.datum
    for al in R.simple_roots:
        t = 2 * R.pairing(lam, al) / R.ell
        if abs(t.imag) > tol or abs(t.real - round(t.real)) > tol:
            return False
    return True


def make_sigma(zbar: int, lam: Weight) -> WeightModule:
    """One-dimensional module of parity ``zbar`` and weight ``lam``; generators act by 0."""
    if not in_lambda_z(lam):
        raise NotInLambdaZ(f"{lam!r}: 2<lam, alpha_i> must lie in ell Z")
    return _one_dim(lam.datum, lam, zbar, f"sigma({zbar % 2}, {lam!r})")


def sigma_weight(ell: int, k: int) -> Weight:
    """Weight ``k ell w_2`` of the free-realization module indexed by ``k``."""
    R = sl21(ell)
    return R.weight([0, k * ell])


def make_trivial(ell: int) -> WeightModule:
    R = sl21(ell)
    return _one_dim(R, R.zero(), 0, "trivial")


def make_odd_trivial(ell: int) -> WeightModule:
    """The odd line with trivial action."""
    R = sl21(ell)
    return _one_dim(R, R.zero(), 1, "odd trivial")


def make_epsilon(ell: int) -> WeightModule:
    """Even line on which ``H_2`` acts by ``ell`` and ``H_1`` by 0 (so every ``K_i`` is 1)."""
    R = sl21(ell)
    return make_sigma(0, R.weight([0, ell]))


# duals and tensor products

def antipode_matrix(V: WeightModule, name: str) -> np.ndarray:
    """Matrix of ``S(X)`` on ``V``: ``S(E) = -K E``, ``S(F) = -F K**-1``."""
    i = int(name[1])
    if name[0] == "E":
        return -V.K(i) @ V.E[i]
    return -V.F[i] @ V.K(i, -1)


def dual(V: WeightModule) -> WeightModule:
    """Dual module with ``(x phi)(v) = (-1)**(|x||phi|) phi(S(x) v)`` in the dual basis."""
    P = V.P
    mats = {}
    for name in GENS:
        S = antipode_matrix(V, name).T
        mats[name] = S @ P if PARITY[name] else S
    weights = [-w for w in V.weights]
    hw = None
    return WeightModule(V.datum, weights, V.parities.copy(), {1: mats["E1"], 2: mats["E2"]},
                        {1: mats["F1"], 2: mats["F2"]}, label=f"dual({V.label})", highest=hw)


def super_kron(A: np.ndarray, B: np.ndarray, V: WeightModule, b_parity: int) -> np.ndarray:
    """Operator of ``a (x) b`` on ``V (x) W`` for homogeneous ``b`` of parity ``b_parity``."""
    if b_parity:
        A = A @ V.P
    return np.kron(A, B)


def tensor(V: WeightModule, W: WeightModule) -> WeightModule:
    """Tensor product through the coproduct, basis ordered as ``np.kron``."""
    IV, IW = np.eye(V.dim), np.eye(W.dim)
    E, F = {}, {}
    for i in (1, 2):
        p = PARITY[f"E{i}"]
        E[i] = np.kron(V.E[i], IW) + super_kron(V.K(i, -1), W.E[i], V, p)
        F[i] = np.kron(V.F[i], W.K(i)) + super_kron(IV.astype(complex), W.F[i], V, p)
    weights = [v + w for v in V.weights for w in W.weights]
    parities = np.array([(p + q) % 2 for p in V.parities for q in W.parities])
    return WeightModule(V.datum, weights, parities, E, F, label=f"({V.label})x({W.label})")


def flip(V: WeightModule, W: WeightModule) -> np.ndarray:
    """Super flip ``V (x) W -> W (x) V``, ``v (x) w -> (-1)**(|v||w|) w (x) v``."""
    n, m = V.dim, W.dim
    T = np.zeros((m * n, n * m), dtype=complex)
    for i in range(n):
        for j in range(m):
            T[j * n + i, i * m + j] = (-1.0) ** (V.parities[i] * W.parities[j])
    return T


# relations

@dataclass
class RelationReport:
    residuals: dict
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def _norm(M) -> float:
    return float(np.max(np.abs(M))) if np.size(M) else 0.0


def check_relations(V: WeightModule, tol: float = 1e-10) -> RelationReport:
    """Residuals of the defining relations (unrolled Cartan part included)."""
    R = V.datum
    xi = R.root_of_unity
    A = R.cartan
    res = {}
    E, F = V.E, V.F
    for i in (1, 2):
        H = V.H(i)
        d = R.d[i - 1]
        for j in (1, 2):
            res[f"[H{i},E{j}]"] = _norm(H @ E[j] - E[j] @ H - A[i - 1, j - 1] * E[j])
            res[f"[H{i},F{j}]"] = _norm(H @ F[j] - F[j] @ H + A[i - 1, j - 1] * F[j])
            Ki, Kinv = V.K(i), V.K(i, -1)
            q = xi.pow(d * A[i - 1, j - 1])
            res[f"K{i}E{j}"] = _norm(Ki @ E[j] @ Kinv - q * E[j])
            res[f"K{i}F{j}"] = _norm(Ki @ F[j] @ Kinv - F[j] / q)
            sign = -1 if (PARITY[f"E{i}"] and PARITY[f"F{j}"]) else 1
            comm = E[i] @ F[j] - sign * F[j] @ E[i]
            target = (Ki - Kinv) / (xi.pow(d) - xi.pow(-d)) if i == j else 0
            res[f"[E{i},F{j}]"] = _norm(comm - target)
    res["E2^2"] = _norm(E[2] @ E[2])
    res["F2^2"] = _norm(F[2] @ F[2])
    s = xi.pow(1) + xi.pow(-1)
    res["serre E"] = _norm(E[1] @ E[1] @ E[2] - s * E[1] @ E[2] @ E[1] + E[2] @ E[1] @ E[1])
    res["serre F"] = _norm(F[1] @ F[1] @ F[2] - s * F[1] @ F[2] @ F[1] + F[2] @ F[1] @ F[1])
    Pm = V.P
    for name in GENS:
        M = V.gen(name)
        want = -1 if PARITY[name] else 1
        res[f"parity {name}"] = _norm(Pm @ M @ Pm - want * M)
    E1l = np.linalg.matrix_power(E[1], R.ell)
    F1l = np.linalg.matrix_power(F[1], R.ell)
    res["E1^ell"] = _norm(E1l)
    res["F1^ell"] = _norm(F1l)
    return RelationReport(res, tol)


# structure queries

def orbit_span(V: WeightModule, v: np.ndarray, tol: float = 1e-9) -> int:
    """Dimension of the submodule generated by ``v``."""
    gens = [V.gen(n) for n in GENS]
    basis = np.zeros((V.dim, 0), dtype=complex)

    def add(vecs, basis):
        M = np.hstack([basis, vecs])
        if M.shape[1] == 0:
            return basis
        U, s, _ = np.linalg.svd(M, full_matrices=False)
        r = int((s > tol * max(1.0, s[0])).sum())
        return U[:, :r]

    frontier = v.reshape(-1, 1).astype(complex)
    basis = add(frontier, basis)
    while True:
        new = np.hstack([g @ basis for g in gens])
        nb = add(new, basis)
        if nb.shape[1] == basis.shape[1]:
            return basis.shape[1]
        basis = nb


def is_simple(V: WeightModule, samples: int = 3, seed: int = 0) -> bool:
    """Closure search: every basis vector and a few random weight vectors generate ``V``."""
    rng = np.random.default_rng(seed)
    for i in range(V.dim):
        e = np.zeros(V.dim, dtype=complex)
        e[i] = 1
        if orbit_span(V, e) != V.dim:
            return False
    keys = V.weight_keys()
    groups: dict = {}
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)
    for idx in groups.values():
        if len(idx) < 2:
            continue
        for _ in range(samples):
            v = np.zeros(V.dim, dtype=complex)
            v[idx] = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
            if orbit_span(V, v) != V.dim:
                return False
    return True


def highest_weight_vectors(V: WeightModule, tol: float = 1e-8) -> list[tuple[Weight, int, np.ndarray]]:
    """Homogeneous vectors killed by ``E1`` and ``E2``, per weight space and parity.

    Returns ``(weight, parity, basis_of_kernel)`` for each nonzero kernel.
    """
    keys = V.weight_keys()
    groups: dict = {}
    for i, k in enumerate(keys):
        groups.setdefault((k, int(V.parities[i])), []).append(i)
    out = []
    stacked = np.vstack([V.E[1], V.E[2]])
    for (k, par), idx in groups.items():
        sub = stacked[:, idx]
        _, s, vh = np.linalg.svd(sub)
        rank = int((s > tol).sum())
        null = vh[rank:].conj().T
        if null.shape[1]:
            full = np.zeros((V.dim, null.shape[1]), dtype=complex)
            full[idx, :] = null
            out.append((V.weights[idx[0]], par, full))
    return out


def weight_multiset(V: WeightModule) -> dict:
    out: dict = {}
    for k, p in zip(V.weight_keys(), V.parities):
        e, o = out.get(k, (0, 0))
        out[k] = (e + (p == 0), o + (p == 1))
    return out


def lowest_weight(V: WeightModule) -> Weight:
    """Weight of greatest depth (largest root-lattice height below the highest)."""
    R = V.datum
    Ainv = np.linalg.inv(R.cartan.astype(float))
    return min(V.weights, key=lambda w: float((Ainv @ np.array(w.coords)).real.sum()))


def typical_dual_alpha(a: complex, c: int) -> complex:
    """``V(lambda_a^c)* = V(lambda_{-a-c-1}^c)`` (highest vector of the dual is even)."""
    return -a - c - 1

