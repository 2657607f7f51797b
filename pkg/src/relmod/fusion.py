"""Young-diagram combinatorics for tensor decompositions of typical modules.

Characters are finite weight multisets split by parity. Classical
``sl(m)`` and ``sl(n)`` characters come from semistandard tableaux; the
character of a typical envelope is that of the even part times the exterior
algebra on the odd negative roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import CriticalGrading, NotInAlcove, NotTypical
from .rootdata import RootDatum, Weight

BoxPartition = tuple[int, ...]


def _key(w: Weight) -> tuple:
    return tuple((round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0) for z in w.coords)


@dataclass
class Character:
    """Weight multiset with separate even and odd multiplicities.

    Attributes
    ----------
    datum : RootDatum
    terms : dict
        Maps a rounded coordinate key to ``[weight, even, odd]``.
    """

    datum: RootDatum
    terms: dict = field(default_factory=dict)

    def add(self, w: Weight, parity: int, mult: int = 1) -> None:
        k = _key(w)
        entry = self.terms.setdefault(k, [w, 0, 0])
        entry[1 + (parity % 2)] += mult

    @property
    def dim(self) -> int:
        return sum(e + o for _, e, o in self.terms.values())

    def items(self):
        """Yield ``(weight, even, odd)`` in sorted key order."""
        for k in sorted(self.terms):
            w, e, o = self.terms[k]
            yield w, e, o

    def counts(self) -> dict:
        """Key to ``(even, odd)``, dropping empty entries; for exact comparison."""
        return {k: (e, o) for k, (_, e, o) in self.terms.items() if e or o}

    def __add__(self, other: "Character") -> "Character":
        out = Character(self.datum)
        for ch in (self, other):
            for w, e, o in ch.items():
                out.add(w, 0, e)
                out.add(w, 1, o)
        return out

    def __mul__(self, other: "Character") -> "Character":
        out = Character(self.datum)
        for w1, e1, o1 in self.items():
            for w2, e2, o2 in other.items():
                w = w1 + w2
                out.add(w, 0, e1 * e2 + o1 * o2)
                out.add(w, 1, e1 * o2 + o1 * e2)
        return out

    def shifted(self, w: Weight, parity: int = 0) -> "Character":
        out = Character(self.datum)
        for v, e, o in self.items():
            out.add(v + w, parity, e)
            out.add(v + w, parity + 1, o)
        return out

    def superdim(self) -> int:
        return sum(e - o for _, e, o in self.items())


# partitions and tableaux

def diagrams_in_box(m: int, n: int) -> list[BoxPartition]:
    """All partitions with at most ``m`` parts, each at most ``n``, in lex order."""
    out = [p for p in itertools.product(range(n + 1), repeat=m)
           if all(p[i] >= p[i + 1] for i in range(m - 1))]
    out.sort()
    assert len(out) == comb(m + n, m)
    return out


def conjugate(p: BoxPartition, length: int) -> BoxPartition:
    """Conjugate partition, padded to ``length`` parts."""
    return tuple(sum(1 for x in p if x >= j) for j in range(1, length + 1))


def complement_conjugate(lam: BoxPartition, m: int, n: int) -> tuple[BoxPartition, BoxPartition]:
    """Complement ``hat_i = n - lam_{m+1-i}`` in the box and its conjugate (``n`` parts)."""
    if len(lam) != m or any(x < 0 or x > n for x in lam):
        raise ValueError(f"{lam} does not fit the {m}x{n} box")
    hat = tuple(n - lam[m - 1 - i] for i in range(m))
    return hat, conjugate(hat, n)


def missing_boxes(lam: BoxPartition, m: int, n: int) -> list[tuple[int, int]]:
    """Cells ``(i, j)`` (1-based) of the ``m x n`` box not covered by ``lam``."""
    return [(i + 1, j + 1) for i in range(m) for j in range(n) if lam[i] < j + 1]


def summand_weight(datum: RootDatum, lam: BoxPartition, z: complex) -> Weight:
    """Highest weight attached to a box diagram in the decomposition of two ``c = 0`` typicals.

    Each cell ``(i, j)`` missing from ``lam`` subtracts the odd root
    ``eps_i - delta_{n+1-j}`` from the weight ``lambda_z^0``. The resulting
    c-part is ``(lam_1 - lam_2, ..., lam_{m-1} - lam_m; mu_1 - mu_2, ...)`` with
    ``mu`` the conjugate of the complement of ``lam``, and the ``a`` coordinate
    is ``z`` plus the number of missing cells in the last column minus the
    number of missing cells in the last row.
    """
    m, n = datum.m, datum.n
    complement_conjugate(lam, m, n)
    w = datum.weight_ca([0] * (datum.rank - 1), z)
    for i, j in missing_boxes(lam, m, n):
        w = w - datum.from_vector(datum.unit(i - 1) - datum.unit(m + n - j))
    return w


def summand_c_part(lam: BoxPartition, m: int, n: int) -> tuple[list[int], list[int]]:
    """The c-part ``(lam_i - lam_{i+1})`` and ``(mu_j - mu_{j+1})`` read off the diagram."""
    _, mu = complement_conjugate(lam, m, n)
    return ([lam[i] - lam[i + 1] for i in range(m - 1)],
            [mu[j] - mu[j + 1] for j in range(n - 1)])


def summand_a_shift(lam: BoxPartition, m: int, n: int) -> int:
    """``a`` coordinate of :func:`summand_weight` minus ``z``."""
    miss = missing_boxes(lam, m, n)
    return sum(1 for _, j in miss if j == n) - sum(1 for i, _ in miss if i == m)


def summand_parity(lam: BoxPartition, m: int, n: int) -> int:
    """Parity of the highest-weight vector of the summand inside the tensor product."""
    return len(missing_boxes(lam, m, n)) % 2


def _check_grading(datum: RootDatum, z: complex) -> None:
    if datum.is_critical(z):
        raise CriticalGrading(f"a + b = {z} is critical")


def tensor_decompose_zero(datum: RootDatum, a: complex, b: complex) -> list[Weight]:
    """Highest weights of the summands of ``V(lambda_a^0) (x) V(lambda_b^0)``."""
    _check_grading(datum, a + b)
    out = [summand_weight(datum, lam, a + b) for lam in diagrams_in_box(datum.m, datum.n)]
    for w in out:
        if not datum.is_typical(w):
            raise NotTypical(f"summand {w!r} is atypical")
    return out


def _dynkin_parts(datum: RootDatum, w: Weight) -> tuple[list[int], list[int]]:
    left, right = datum.c_parts(w)
    return left, right


def _weyl_dim(labels: list[int]) -> int:
    k = len(labels) + 1
    num, den = 1, 1
    for i in range(k):
        for j in range(i + 1, k):
            num *= sum(labels[t] + 1 for t in range(i, j))
            den *= j - i
    return num // den


def g0_dim(datum: RootDatum, w: Weight) -> int:
    """Dimension of the simple even-part module with the c-part of ``w``."""
    left, right = _dynkin_parts(datum, w)
    return _weyl_dim(left) * _weyl_dim(right)


def envelope_dim(datum: RootDatum, w: Weight) -> int:
    """``2**(mn)`` times :func:`g0_dim`; requires the closed alcove."""
    if not datum.in_alcove(w, strict=False):
        raise NotInAlcove(f"{w!r} is outside the closed alcove")
    return 2 ** (datum.m * datum.n) * g0_dim(datum, w)


def _ssyt_contents(shape: list[int], k: int):
    """Contents (letter counts) of all semistandard tableaux of ``shape`` in letters ``0..k-1``."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    filling: dict = {}

    def rec(idx):
        if idx == len(cells):
            cnt = [0] * k
            for v in filling.values():
                cnt[v] += 1
            yield cnt
            return
        r, c = cells[idx]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, k):
            filling[(r, c)] = v
            yield from rec(idx + 1)
        filling.pop((r, c), None)

    yield from rec(0)


def _classical_shifts(labels: list[int]) -> list[np.ndarray]:
    """Weight shifts (content minus highest content) of the ``gl(k)`` module with these labels."""
    k = len(labels) + 1
    shape = [sum(labels[i:]) for i in range(k - 1)]
    top = np.array(shape + [0], dtype=float)
    return [np.array(cnt, dtype=float) - top for cnt in _ssyt_contents(shape, k)]


def g0_character(datum: RootDatum, w: Weight) -> Character:
    """Character of the simple even-part module of highest weight ``w`` (all even)."""
    left, right = _dynkin_parts(datum, w)
    m, n = datum.m, datum.n
    ch = Character(datum)
    for s1 in _classical_shifts(left):
        for s2 in _classical_shifts(right):
            vec = np.concatenate([s1, s2])
            ch.add(w + datum.from_vector(vec), 0)
    return ch


def exterior_odd_character(datum: RootDatum) -> Character:
    """Character of the exterior algebra on the odd negative root vectors."""
    ch = Character(datum)
    odd = datum.pos_odd
    for r in range(len(odd) + 1):
        for subset in itertools.combinations(odd, r):
            ch.add(-sum(subset, datum.zero()), r % 2)
    return ch


def envelope_character(datum: RootDatum, w: Weight) -> Character:
    """Character of the typical envelope with highest weight ``w`` (highest vector even)."""
    return exterior_odd_character(datum) * g0_character(datum, w)


def standard_character(datum: RootDatum) -> Character:
    ch = Character(datum)
    for i in range(datum.m):
        ch.add(datum.from_vector(datum.unit(i)), 0)
    for j in range(datum.n):
        ch.add(datum.from_vector(datum.unit(datum.m + j)), 1)
    return ch


def pieri_step(datum: RootDatum, weights: list[Weight], with_parity: bool = False) -> list:
    """Summands of ``V(w) (x) standard`` for each typical ``w`` in the open alcove.

    A box is added to the ``sl(m)`` diagram (weight ``eps_i``, even) or to the
    ``sl(n)`` diagram (weight ``delta_j``, odd); only dominant results are
    kept. With ``with_parity`` pairs ``(weight, parity)`` are returned.
    """
    out = []
    adds = [(datum.from_vector(datum.unit(i)), 0) for i in range(datum.m)]
    adds += [(datum.from_vector(datum.unit(datum.m + j)), 1) for j in range(datum.n)]
    for w in weights:
        if not datum.is_typical(w):
            raise NotTypical(f"{w!r} is atypical")
        if not datum.in_alcove(w, strict=True):
            raise NotInAlcove(f"{w!r} is not in the open alcove")
        for nu, par in adds:
            v = w + nu
            try:
                datum.c_parts(v)
            except NotInAlcove:
                continue
            out.append((v, par) if with_parity else v)
    return out


def omega(datum: RootDatum) -> complex:
    """``xi**(ell n / (2(m - n)))``, so that ``omega**(m-n) = (-1)**n``."""
    return datum.root_of_unity.pow(datum.ell * datum.n / (2 * (datum.m - datum.n)))


def psi_weight(datum: RootDatum, w: Weight) -> complex:
    """Ring morphism on integral weights: ``eps_i -> omega``, ``delta_j -> -omega``."""
    coords = np.array(w.coords)
    if np.max(np.abs(coords - np.round(coords.real))) > 1e-9:
        raise ValueError(f"{w!r} is not integral")
    raw = np.round(coords.real) @ datum.fundamental_reps
    x = int(round(raw[: datum.m].sum()))
    y = int(round(raw[datum.m:].sum()))
    return omega(datum) ** (x + y) * (-1) ** (y % 2)


def psi_superdim(ch: Character) -> complex:
    """Apply the morphism to the supercharacter ``sum (even - odd) [w]``."""
    return sum((e - o) * psi_weight(ch.datum, w) for w, e, o in ch.items())


def projective_character(datum: RootDatum, w: Weight) -> Character:
    """Character of the projective module ``V^w`` from its product formula.

    ``e^w prod_even (1 + e^-a + ... + e^-(ell-1)a) prod_odd (1 - e^-a)``.
    """
    ch = Character(datum)
    ch.add(w, 0)
    for al in datum.pos_even:
        f = Character(datum)
        for t in range(datum.ell):
            f.add(al * (-t), 0)
        ch = ch * f
    for al in datum.pos_odd:
        f = Character(datum)
        f.add(datum.zero(), 0)
        f.add(-al, 1)
        ch = ch * f
    return ch


def highest_weight_index(datum: RootDatum, w: Weight) -> int:
    """``<w + rho0, theta>`` for the highest even root of the ``sl(m)`` side."""
    left, _ = datum.c_parts(w)
    return sum(left) + len(left)


def tensor_dims(datum: RootDatum, weights: list[Weight]) -> list[int]:
    return [envelope_dim(datum, w) for w in weights]


def total_dim(datum: RootDatum, weights: list[Weight]) -> int:
    return sum(tensor_dims(datum, weights))

