"""Arithmetic at a fixed odd root of unity.

Everything is double-precision complex. The root of unity is
``xi = exp(2 i pi / ell)`` and powers ``xi**z`` are defined for complex ``z``
through the exponential, so that ``xi_pow(z + w) == xi_pow(z) * xi_pow(w)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Equality and zero thresholds used by predicates and checkers."""

    eq_tol: float = DEFAULT_TOL
    zero_tol: float = DEFAULT_TOL

    def __post_init__(self):
        for name in ("eq_tol", "zero_tol"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be finite and positive, got {v}")


@dataclass(frozen=True)
class RootOfUnity:
    """The root of unity ``xi = exp(2 i pi / ell)`` for odd ``ell >= 3``.

    Parameters
    ----------
    ell : int
        Odd order of the root of unity.

    Examples
    --------
    >>> r = RootOfUnity(5)
    >>> abs(r.xi ** 5 - 1) < 1e-12
    True
    """

    ell: int

    def __post_init__(self):
        if not isinstance(self.ell, (int, np.integer)) or self.ell < 3 or self.ell % 2 == 0:
            raise ConfigError(f"ell must be an odd integer >= 3, got {self.ell!r}")

    @property
    def xi(self) -> complex:
        return cmath.exp(2j * math.pi / self.ell)

    def pow(self, z: complex) -> complex:
        """Return ``xi**z = exp(2 i pi z / ell)``.

        Real half-integer exponents are reduced modulo ``ell`` first, so that
        ``{k ell} == 0`` and ``{k ell / 2} == 0`` hold exactly.
        """
        z = complex(z)
        if z.imag == 0 and (2 * z.real).is_integer():
            z = complex(z.real % self.ell)
        return cmath.exp(2j * math.pi * z / self.ell)

    def qnum(self, z: complex) -> complex:
        """Return ``{z} = xi**z - xi**(-z)``."""
        return self.pow(z) - self.pow(-z)

    def qint(self, j: complex) -> complex:
        """Balanced quantum integer ``(j) = {j}/{1}``."""
        return self.qnum(j) / self.qnum(1)

    def qfact(self, k: int) -> complex:
        """Balanced quantum factorial ``(1)(2)...(k)``; requires ``0 <= k < ell``."""
        if k < 0 or k >= self.ell:
            raise ValueError(f"qfact needs 0 <= k < ell={self.ell}, got {k}")
        out = 1.0 + 0j
        for j in range(1, k + 1):
            out *= self.qint(j)
        return out


def xi_pow(z: complex, ell: int) -> complex:
    """``exp(2 i pi z / ell)``."""
    return RootOfUnity(ell).pow(z)


def qnum(z: complex, ell: int) -> complex:
    """``{z} = xi**z - xi**(-z)`` at ``xi = exp(2 i pi / ell)``."""
    return RootOfUnity(ell).qnum(z)


def qfact(k: int, ell: int) -> complex:
    """Balanced quantum factorial at ``xi = exp(2 i pi / ell)``."""
    return RootOfUnity(ell).qfact(k)


def base_qfact(k: int, p: complex) -> complex:
    """Quantum factorial in base ``p`` with ``(j)_p = (1 - p**j)/(1 - p)``.

    This is the normalisation under which ``exp_p(x) exp_{1/p}(y)`` style
    identities for root vectors hold; for ``p = xi**(-2)`` one has
    ``(k)_p! = xi**(-k(k-1)/2) * qfact(k)``.
    """
    out = 1.0 + 0j
    for j in range(1, k + 1):
        if abs(1 - p) < 1e-14:
            out *= j
        else:
            out *= (1 - p**j) / (1 - p)
    return out


def qexp_trunc(base: complex, X: np.ndarray, ell: int) -> np.ndarray:
    """Truncated quantum exponential of a square matrix.

    Parameters
    ----------
    base : complex
        The base ``q_alpha`` of the quantum factorials.
    X : ndarray, shape (N, N)
        The argument. If ``X`` is nilpotent the series stops early.
    ell : int
        Truncation order: terms ``X**n`` with ``n < ell`` are kept.

    Returns
    -------
    ndarray
        ``sum_{n < ell} X**n / (n)_base!``.
    """
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"qexp_trunc needs a square matrix, got shape {X.shape}")
    out = np.eye(X.shape[0], dtype=complex)
    power = np.eye(X.shape[0], dtype=complex)
    floor = 1e-12 * max(1.0, float(np.abs(X).max(initial=0.0)))
    for n in range(1, ell):
        power = power @ X
        if np.abs(power).max(initial=0.0) <= floor:
            break
        fact = base_qfact(n, base)
        if abs(fact) < 1e-14:
            raise ZeroDivisionError(f"(n)_base! vanishes at n={n} on a non-nilpotent argument")
        out = out + power / fact
    return out
