"""Root data of sl(m|n) with the distinguished Borel subalgebra.

Weights are stored by their fundamental-weight coordinates
``c_i = lambda(H_i)``; coordinate ``m`` (1-based) is the complex parameter
``a``.  Each weight also has a vector in the ``(eps_1..eps_m, delta_1..delta_n)``
basis, normalised to be orthogonal to the supertrace direction so that the
bilinear form is the one induced by the supertrace on the Cartan subalgebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import ConfigError, MismatchedDatum, NotInAlcove
from .scalars import RootOfUnity, Tolerance


def _in_half_ell_z(z: complex, ell: int, tol: float) -> bool:
    """Is ``z`` (numerically) in ``(ell/2) Z``?"""
    if abs(z.imag) > tol:
        return False
    t = 2 * z.real / ell
    return abs(t - round(t)) * ell / 2 <= tol


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Combinatorial data of ``sl(m|n)`` at an odd root of unity of order ``ell``.

    Parameters
    ----------
    m, n : int
        Sizes of the even blocks, ``m != n``.
    ell : int
        Odd order of the root of unity, ``ell >= m + n - 1``.
    tol : Tolerance, optional
        Thresholds for zero tests.

    Examples
    --------
    >>> R = RootDatum(2, 1, 5)
    >>> R.rank, R.d
    (2, (1, 1))
    >>> R.cartan.tolist()
    [[2, -1], [-1, 0]]
    """

    m: int
    n: int
    ell: int
    tol: Tolerance = field(default_factory=Tolerance)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ConfigError("m and n must be positive")
        if self.m == self.n:
            raise ConfigError("m == n is not supported (the Cartan form degenerates)")
        RootOfUnity(self.ell)
        if self.ell < self.m + self.n - 1:
            raise ConfigError(f"ell={self.ell} must be at least m+n-1={self.m + self.n - 1}")

    def __eq__(self, other):
        return isinstance(other, RootDatum) and (self.m, self.n, self.ell) == (other.m, other.n, other.ell)

    def __hash__(self):
        return hash((self.m, self.n, self.ell))

    def __repr__(self):
        return f"RootDatum(m={self.m}, n={self.n}, ell={self.ell})"

    # basic data

    @property
    def rank(self) -> int:
        return self.m + self.n - 1

    @property
    def dim(self) -> int:
        return self.m + self.n

    @cached_property
    def root_of_unity(self) -> RootOfUnity:
        return RootOfUnity(self.ell)

    @cached_property
    def d(self) -> tuple[int, ...]:
        """Signs ``d_i``: +1 for ``i <= m``, -1 beyond (1-based)."""
        return tuple(1 if i + 1 <= self.m else -1 for i in range(self.rank))

    @cached_property
    def form(self) -> np.ndarray:
        """Diagonal Gram matrix of the eps/delta basis."""
        return np.diag([1.0] * self.m + [-1.0] * self.n)

    @cached_property
    def supertrace_dir(self) -> np.ndarray:
        return np.array([1.0] * self.m + [-1.0] * self.n)

    def _h_functional(self, i: int) -> np.ndarray:
        """Coefficient vector of ``lambda -> lambda(H_i)`` (0-based ``i``)."""
        f = np.zeros(self.dim)
        f[i] = 1.0
        f[i + 1] = 1.0 if i + 1 == self.m else -1.0
        return f

    @cached_property
    def h_matrix(self) -> np.ndarray:
        """Rows are the functionals ``lambda(H_i)`` in eps/delta coordinates."""
        return np.array([self._h_functional(i) for i in range(self.rank)])

    def unit(self, k: int) -> np.ndarray:
        v = np.zeros(self.dim)
        v[k] = 1.0
        return v

    @cached_property
    def fundamental_reps(self) -> np.ndarray:
        """Fixed representatives of the fundamental weights, one row each."""
        m, n = self.m, self.n
        reps = []
        for k in range(1, self.rank + 1):
            v = np.zeros(self.dim)
            if k < m:
                v[:k] = 1.0
            elif k == m:
                v[:m] = 1.0
            else:
                j = k - m
                v[m + j:] = -1.0
            reps.append(v)
        return np.array(reps)

    def project(self, vec) -> np.ndarray:
        """Remove the supertrace component: the canonical representative."""
        vec = np.asarray(vec, dtype=complex)
        s = self.supertrace_dir
        return vec - (vec.sum() / (self.m - self.n)) * s

    # weights and roots

    def weight(self, coords: Sequence[complex]) -> "Weight":
        return Weight(self, tuple(complex(c) for c in coords))

    def weight_ca(self, c: Sequence[int] | int, a: complex) -> "Weight":
        """Weight ``lambda_a^c`` with c-part ``c`` (length ``rank - 1``) and ``a``."""
        if np.isscalar(c):
            c = [c]
        c = list(c)
        if len(c) != self.rank - 1:
            raise ValueError(f"c-part needs {self.rank - 1} entries, got {len(c)}")
        coords = c[: self.m - 1] + [a] + c[self.m - 1:]
        return self.weight(coords)

    def from_vector(self, vec) -> "Weight":
        """Weight whose eps/delta representative is ``vec`` (any section)."""
        coords = self.h_matrix @ np.asarray(vec, dtype=complex)
        return self.weight(coords)

    def zero(self) -> "Weight":
        return self.weight([0] * self.rank)

    def fundamental(self, i: int) -> "Weight":
        """Fundamental weight ``w_i`` (1-based)."""
        c = [0] * self.rank
        c[i - 1] = 1
        return self.weight(c)

    @cached_property
    def simple_roots(self) -> tuple["Weight", ...]:
        return tuple(self.from_vector(self.unit(i) - self.unit(i + 1)) for i in range(self.rank))

    @cached_property
    def cartan(self) -> np.ndarray:
        """Integer matrix ``a_ij = alpha_j(H_i)``."""
        A = np.array([[self.simple_roots[j].coords[i].real for j in range(self.rank)]
                      for i in range(self.rank)])
        return np.rint(A).astype(int)

    @cached_property
    def pos_even(self) -> tuple["Weight", ...]:
        m, n = self.m, self.n
        out = [self.from_vector(self.unit(i) - self.unit(j)) for i in range(m) for j in range(i + 1, m)]
        out += [self.from_vector(self.unit(m + i) - self.unit(m + j)) for i in range(n) for j in range(i + 1, n)]
        return tuple(out)

    @cached_property
    def pos_odd(self) -> tuple["Weight", ...]:
        """Odd positive roots ``eps_i - delta_j``, ordered by ``(i, j)``."""
        m, n = self.m, self.n
        return tuple(self.from_vector(self.unit(i) - self.unit(m + j)) for i in range(m) for j in range(n))

    @cached_property
    def pos_odd_labels(self) -> tuple[tuple[int, int], ...]:
        return tuple((i + 1, j + 1) for i in range(self.m) for j in range(self.n))

    @cached_property
    def rho0(self) -> "Weight":
        return sum(self.pos_even, self.zero()) * 0.5

    @cached_property
    def rho1(self) -> "Weight":
        return sum(self.pos_odd, self.zero()) * 0.5

    @cached_property
    def rho(self) -> "Weight":
        return self.rho0 - self.rho1

    @cached_property
    def pi_wt(self) -> "Weight":
        """The pivot weight ``2 rho - 2 ell rho0``."""
        return self.rho * 2 - self.rho0 * (2 * self.ell)

    def pairing(self, lam: "Weight", mu: "Weight") -> complex:
        if lam.datum != self or mu.datum != self:
            raise MismatchedDatum("weights over different root data")
        return complex(lam.vector @ self.form @ mu.vector)

    # counts and gradings

    def borel_dim(self) -> int:
        m, n = self.m, self.n
        return self.ell ** ((m * m + n * n - m - n) // 2) * 2 ** (m * n)

    def small_d(self) -> int:
        return abs(self.m - self.n) // math.gcd(self.m, self.n)

    @cached_property
    def _cartan_inv(self) -> np.ndarray:
        return np.linalg.inv(self.cartan.astype(float))

    # typicality

    def odd_factors(self, lam: "Weight") -> list[complex]:
        """Values ``<lambda + rho, alpha>`` over the odd positive roots."""
        lr = lam + self.rho
        return [self.pairing(lr, al) for al in self.pos_odd]

    def is_typical(self, lam: "Weight", return_witness: bool = False):
        """Typicality through the product of ``{<lambda+rho, alpha>}`` over odd roots.

        Returns ``True`` when every factor has modulus above ``zero_tol``.
        With ``return_witness`` a pair ``(flag, witness)`` is returned, the
        witness listing the ``(i, j)`` labels of the vanishing roots
        ``eps_i - delta_j``.
        """
        R = self.root_of_unity
        witness = [lab for lab, z in zip(self.pos_odd_labels, self.odd_factors(lam))
                   if abs(R.qnum(z)) <= self.tol.zero_tol]
        flag = not witness
        return (flag, witness) if return_witness else flag

    def is_typical_arith(self, lam: "Weight") -> bool:
        """Typicality through explicit linear conditions on the coordinates.

        For each odd root ``eps_i - delta_j`` the quantity
        ``sum_{k=i}^{m-1} c_k + a - sum_{k=m+1}^{m+j-1} c_k + (m + 1 - i - j)``
        must avoid ``(ell/2) Z``.
        """
        m, n = self.m, self.n
        c = lam.coords
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                z = sum(c[k - 1] for k in range(i, m)) + c[m - 1]
                z -= sum(c[k - 1] for k in range(m + 1, m + j))
                z += m + 1 - i - j
                if _in_half_ell_z(z, self.ell, self.tol.zero_tol):
                    return False
        return True

    # alcove

    def c_parts(self, lam: "Weight") -> tuple[list[int], list[int]]:
        """Integer c-parts of the sl(m) and sl(n) sides."""
        left = lam.coords[: self.m - 1]
        right = lam.coords[self.m:]
        out = []
        for part in (left, right):
            ints = []
            for z in part:
                if abs(z.imag) > 1e-12 or abs(z.real - round(z.real)) > 1e-12 or round(z.real) < 0:
                    raise NotInAlcove(f"c-part must be nonnegative integers, got {lam.coords}")
                ints.append(int(round(z.real)))
            out.append(ints)
        return out[0], out[1]

    def in_alcove(self, lam: "Weight", strict: bool = False) -> bool:
        left, right = self.c_parts(lam)
        sums = [sum(c + 1 for c in left), sum(c + 1 for c in right)]
        if strict:
            return all(s < self.ell for s in sums)
        return all(s <= self.ell for s in sums)

    def grading_class(self, lam: "Weight") -> "GradingClass":
        t = self._cartan_inv @ np.array(lam.coords)
        full = tuple(complex(round((z.real % 1.0), 12) % 1.0, z.imag) for z in t)
        a = lam.a
        return GradingClass(full=full, pert=complex(round(a.real % 1.0, 12) % 1.0, a.imag))

    def is_critical(self, a: complex) -> bool:
        """Is the perturbative class of ``a`` in ``(1/2) Z / Z``?"""
        z = 2 * complex(a)
        return abs(z.imag) <= self.tol.zero_tol and abs(z.real - round(z.real)) <= self.tol.zero_tol


@dataclass(frozen=True)
class GradingClass:
    """Class of a weight modulo the root lattice, and its perturbative shadow ``a mod Z``."""

    full: tuple[complex, ...]
    pert: complex


@dataclass(frozen=True, eq=False)
class Weight:
    """A point of the dual Cartan subalgebra.

    Parameters
    ----------
    datum : RootDatum
    coords : tuple of complex
        ``(c_1, ..., c_{m-1}, a, c_{m+1}, ..., c_r)`` with ``c_i = lambda(H_i)``.
    """

    datum: RootDatum
    coords: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coords) != self.datum.rank:
            raise ValueError(f"expected {self.datum.rank} coordinates, got {len(self.coords)}")

    @property
    def a(self) -> complex:
        return self.coords[self.datum.m - 1]

    @property
    def c(self) -> tuple[complex, ...]:
        m = self.datum.m
        return self.coords[: m - 1] + self.coords[m:]

    @cached_property
    def vector(self) -> np.ndarray:
        """Canonical eps/delta representative (orthogonal to the supertrace)."""
        raw = np.asarray(self.coords, dtype=complex) @ self.datum.fundamental_reps
        return self.datum.project(raw)

    def _check(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        if other.datum != self.datum:
            raise MismatchedDatum("weights over different root data")
        return None

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        r = self._check(other)
        if r is NotImplemented:
            return r
        return Weight(self.datum, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._check(other)
        if r is NotImplemented:
            return r
        return Weight(self.datum, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return Weight(self.datum, tuple(-x for x in self.coords))

    def __mul__(self, s):
        return Weight(self.datum, tuple(complex(s) * x for x in self.coords))

    __rmul__ = __mul__

    def pair(self, other: "Weight") -> complex:
        return self.datum.pairing(self, other)

    def isclose(self, other: "Weight", tol: float = 1e-9) -> bool:
        return other.datum == self.datum and max(abs(x - y) for x, y in zip(self.coords, other.coords)) <= tol

    def is_perturbative(self, tol: float = 1e-12) -> bool:
        return all(abs(z.imag) <= tol and abs(z.real - round(z.real)) <= tol for z in self.c)

    def to_json(self) -> dict:
        return {"c": [_num(z) for z in self.c], "a": {"re": self.a.real, "im": self.a.imag}}

    def __repr__(self):
        parts = ", ".join(_fmt(z) for z in self.coords)
        return f"Weight({parts})"


def _num(z: complex):
    if abs(z.imag) < 1e-12 and abs(z.real - round(z.real)) < 1e-12:
        return int(round(z.real))
    return {"re": z.real, "im": z.imag}


def _fmt(z: complex) -> str:
    if abs(z.imag) < 1e-12:
        r = z.real
        return str(int(round(r))) if abs(r - round(r)) < 1e-12 else f"{r:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}j"


def weight_from_json(datum: RootDatum, obj: dict) -> Weight:
    """Inverse of :meth:`Weight.to_json`."""
    def parse(v):
        if isinstance(v, dict):
            return complex(v.get("re", 0.0), v.get("im", 0.0))
        return complex(v)
    c = [parse(v) for v in obj.get("c", [])]
    return datum.weight_ca(c, parse(obj["a"]))
