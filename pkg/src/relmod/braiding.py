"""Truncated R-matrix, braiding and twist on explicit sl(2|1) modules.

The R-matrix is ``R = Rt . H`` where ``H`` acts by ``xi**<w(v), w(v')>`` on
weight vectors and ``Rt`` is the ordered product over the positive roots
``alpha1 < alpha1 + alpha2 < alpha2`` of truncated quantum exponentials of
``(-1)**|alpha| (xi - xi**-1) / a_alpha * E_alpha (x) F_alpha``. The
constants ``a_alpha`` were fitted once against the quasitriangularity
identities (see :func:`calibrate`) and are frozen in :data:`CONVENTIONS`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .repr_sl21 import (
    GENS,
    WeightModule,
    flip,
    make_standard,
    super_kron,
    tensor,
)
from .scalars import qexp_trunc

ROOT_ORDER = ("1", "12", "2")
ROOT_PARITY = {"1": 0, "12": 1, "2": 1}
ROOT_NORM = {"1": 2, "12": 0, "2": 0}  # <alpha, alpha>


@dataclass(frozen=True)
class Conventions:
    """Per-root constants ``a_alpha = sign * xi**power``."""

    a_sign: tuple = (1, 1, 1)
    a_power: tuple = (0, 0, 0)

    def a(self, root: str, ell: int) -> complex:
        i = ROOT_ORDER.index(root)
        return self.a_sign[i] * np.exp(2j * np.pi * self.a_power[i] / ell)


# Fitted by ``calibrate``; a_12 = -xi**-1, simple roots 1.
CONVENTIONS = Conventions(a_sign=(1, -1, 1), a_power=(0, -1, 0))


def cartan_op(V: WeightModule, W: WeightModule) -> np.ndarray:
    """Diagonal operator ``xi**<w(v), w(w')>`` on ``V (x) W``."""
    R = V.datum
    xi = R.root_of_unity
    vv = np.array([w.vector for w in V.weights])
    ww = np.array([w.vector for w in W.weights])
    G = vv @ R.form @ ww.T
    return np.diag(np.exp(2j * np.pi * G.reshape(-1) / R.ell))


def root_term(V: WeightModule, W: WeightModule, root: str, conv: Conventions = CONVENTIONS) -> np.ndarray:
    """Operator ``(-1)**|alpha| (xi - xi**-1)/a_alpha * E_alpha (x) F_alpha`` on ``V (x) W``."""
    R = V.datum
    xi = R.root_of_unity
    p = ROOT_PARITY[root]
    coef = (-1) ** p * (xi.pow(1) - xi.pow(-1)) / conv.a(root, R.ell)
    return coef * super_kron(V.gen("E" + root), W.gen("F" + root), V, p)


def root_base(root: str, ell: int) -> complex:
    """``q_alpha = (-1)**|alpha| xi**(-<alpha, alpha>)``."""
    return (-1) ** ROOT_PARITY[root] * np.exp(-2j * np.pi * ROOT_NORM[root] / ell)


def quasi_R(V: WeightModule, W: WeightModule, conv: Conventions = CONVENTIONS) -> np.ndarray:
    """Unipotent part of the R-matrix on ``V (x) W``."""
    out = np.eye(V.dim * W.dim, dtype=complex)
    for root in ROOT_ORDER:
        X = root_term(V, W, root, conv)
        out = out @ qexp_trunc(root_base(root, V.ell), X, V.ell)
    return out


def r_matrix(V: WeightModule, W: WeightModule, conv: Conventions = CONVENTIONS) -> np.ndarray:
    return quasi_R(V, W, conv) @ cartan_op(V, W)


def braiding(V: WeightModule, W: WeightModule, conv: Conventions = CONVENTIONS) -> np.ndarray:
    """``c_{V,W} = tau . R : V (x) W -> W (x) V``."""
    return flip(V, W) @ r_matrix(V, W, conv)


def braiding_inv(V: WeightModule, W: WeightModule, conv: Conventions = CONVENTIONS) -> np.ndarray:
    """Inverse of ``c_{W,V}``, a map ``V (x) W -> W (x) V``."""
    return np.linalg.inv(braiding(W, V, conv))


# duality maps

def pivot_diag(V: WeightModule) -> np.ndarray:
    """Eigenvalues ``xi**<pi, w(v)>`` of the pivot on the basis."""
    R = V.datum
    return np.array([R.root_of_unity.pow(R.pairing(R.pi_wt, w)) for w in V.weights])


def ev_left(V: WeightModule) -> np.ndarray:
    """``ev : V* (x) V -> 1``, ``v_i* (x) v_j -> delta_ij`` (row vector)."""
    return np.eye(V.dim, dtype=complex).reshape(1, -1)


def coev_left(V: WeightModule) -> np.ndarray:
    """``coev : 1 -> V (x) V*``, ``1 -> sum v_i (x) v_i*`` (column vector)."""
    return np.eye(V.dim, dtype=complex).reshape(-1, 1)


def ev_right(V: WeightModule) -> np.ndarray:
    """``ev' : V (x) V* -> 1``, ``v_j (x) v_i* -> (-1)**|v_i| v_i*(K_pi v_j)``."""
    d = ((-1.0) ** V.parities) * pivot_diag(V)
    return np.diag(d).reshape(1, -1)


def coev_right(V: WeightModule) -> np.ndarray:
    """``coev' : 1 -> V* (x) V``, ``1 -> sum (-1)**|v_i| v_i* (x) K_pi**-1 v_i``."""
    d = ((-1.0) ** V.parities) / pivot_diag(V)
    return np.diag(d).reshape(-1, 1)


def right_partial_trace(f: np.ndarray, V: WeightModule, W: WeightModule) -> np.ndarray:
    """``(Id_V (x) ev'_W)(f (x) Id_W*)(Id_V (x) coev_W)`` for ``f`` on ``V (x) W``."""
    w = ((-1.0) ** W.parities) * pivot_diag(W)
    T = f.reshape(V.dim, W.dim, V.dim, W.dim)
    return np.einsum("ajbj,j->ab", T, w)


def twist_op(V: WeightModule, conv: Conventions = CONVENTIONS) -> np.ndarray:
    """Twist as the right partial trace of ``c_{V,V}``."""
    return right_partial_trace(braiding(V, V, conv), V, V)


def twist_scalar_op(V: WeightModule, conv: Conventions = CONVENTIONS) -> complex:
    """Scalar of :func:`twist_op` on a simple module (its ``[0, 0]`` entry)."""
    return complex(twist_op(V, conv)[0, 0])


def double_braiding(V: WeightModule, W: WeightModule, conv: Conventions = CONVENTIONS) -> np.ndarray:
    """``c_{W,V} c_{V,W}`` on ``V (x) W``."""
    return braiding(W, V, conv) @ braiding(V, W, conv)


def open_hopf_op(V: WeightModule, W: WeightModule, conv: Conventions = CONVENTIONS) -> np.ndarray:
    """Endomorphism of ``V`` obtained by encircling it with a closed ``W`` strand."""
    return right_partial_trace(double_braiding(V, W, conv), V, W)


# identity checks

def coproduct_op(V: WeightModule, W: WeightModule, name: str) -> np.ndarray:
    return tensor(V, W).gen(name)


def _res(A, B) -> float:
    return float(np.max(np.abs(A - B)))


def ybe_residual(U: WeightModule, V: WeightModule, W: WeightModule,
                 conv: Conventions = CONVENTIONS) -> float:
    """``(c_VW x 1)(1 x c_UW)(c_UV x 1) = (1 x c_UV)(c_UW x 1)(1 x c_VW)`` on ``U V W``."""
    IU, IV, IW = (np.eye(X.dim) for X in (U, V, W))
    lhs = np.kron(braiding(V, W, conv), IU) @ np.kron(IV, braiding(U, W, conv)) @ np.kron(braiding(U, V, conv), IW)
    rhs = np.kron(IW, braiding(U, V, conv)) @ np.kron(braiding(U, W, conv), IV) @ np.kron(IU, braiding(V, W, conv))
    return _res(lhs, rhs)


def r13(V: WeightModule, W: WeightModule, U: WeightModule, conv: Conventions = CONVENTIONS) -> np.ndarray:
    """``R`` of ``(V, U)`` placed on factors 1 and 3 of ``V (x) W (x) U``."""
    IV = np.eye(V.dim)
    t_wu = np.kron(IV, flip(W, U))
    t_uw = np.kron(IV, flip(U, W))
    return t_uw @ np.kron(r_matrix(V, U, conv), np.eye(W.dim)) @ t_wu


@dataclass
class QuasiReport:
    residuals: dict = field(default_factory=dict)
    tol: float = 1e-9

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def check_quasitriangular(V: WeightModule, W: WeightModule, U: WeightModule,
                          conv: Conventions = CONVENTIONS, tol: float = 1e-9) -> QuasiReport:
    """Residuals of the three quasitriangularity identities.

    ``(1)``: ``R_{V(x)W, U} = R13 R23``; ``(2)``: ``R_{V, W(x)U} = R13 R12``;
    ``(3)``: ``R Delta(x) = Delta^op(x) R`` on ``V (x) W`` for every generator.
    """
    rep = QuasiReport(tol=tol)
    IV, IU = np.eye(V.dim), np.eye(U.dim)
    R13 = r13(V, W, U, conv)
    R23 = np.kron(IV, r_matrix(W, U, conv))
    R12 = np.kron(r_matrix(V, W, conv), IU)
    rep.residuals["(1)"] = _res(r_matrix(tensor(V, W), U, conv), R13 @ R23)
    rep.residuals["(2)"] = _res(r_matrix(V, tensor(W, U), conv), R13 @ R12)
    rep.residuals["(3)"] = intertwiner_residual(V, W, conv)
    return rep


def intertwiner_residual(V: WeightModule, W: WeightModule, conv: Conventions = CONVENTIONS) -> float:
    """``max_x |R Delta(x) - Delta^op(x) R|`` over generators and Cartan elements."""
    R = r_matrix(V, W, conv)
    VW, WV = tensor(V, W), tensor(W, V)
    tau, tau_inv = flip(W, V), flip(V, W)
    out = 0.0
    for name in GENS:
        op = tau @ WV.gen(name) @ tau_inv
        out = max(out, _res(R @ VW.gen(name), op @ R))
    for i in (1, 2):
        out = max(out, _res(R @ VW.H(i), VW.H(i) @ R))
    return out


def naturality_residual(f: np.ndarray, V: WeightModule, V2: WeightModule, W: WeightModule,
                        conv: Conventions = CONVENTIONS) -> float:
    """``(1 x f) c_{V,W} = c_{V2,W} (f x 1)`` for an even module map ``f : V -> V2``."""
    lhs = np.kron(np.eye(W.dim), f) @ braiding(V, W, conv)
    rhs = braiding(V2, W, conv) @ np.kron(f, np.eye(W.dim))
    return _res(lhs, rhs)


# calibration

def calibrate(ell: int, powers: range | None = None) -> tuple[Conventions, float]:
    """Search ``a_alpha in {+-xi**k}`` minimising quasitriangularity residuals on the standard module."""
    v = make_standard(ell)
    powers = range(ell) if powers is None else powers
    choices = [(s, k) for s in (1, -1) for k in powers]
    best, best_res = None, np.inf
    for combo in itertools.product(choices, repeat=3):
        conv = Conventions(tuple(c[0] for c in combo), tuple(c[1] for c in combo))
        r = intertwiner_residual(v, v, conv)
        if r > 1e-6:
            continue
        r = max(r, check_quasitriangular(v, v, v, conv).max_residual)
        if r < best_res:
            best, best_res = conv, r
    return best, best_res
