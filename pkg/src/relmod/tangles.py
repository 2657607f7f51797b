"""Evaluation of colored framed tangles given as Morse words.

A diagram is read bottom to top. Each strand carries a :class:`Color` and a
``dual`` flag (``True`` for a downward strand, which carries the dual module).
The state is a dense tensor with one axis per current strand plus a last axis
for the bottom boundary; every elementary piece is an even module map and is
applied with :func:`numpy.tensordot` on the axes it touches.

Surgery invariants expand every Kirby-colored component into its typical
summands, evaluate each plain diagram, and normalise by ``Delta_+-``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace

import numpy as np

from . import braiding as br
from .errors import ConfigError, CriticalGrading, DegenerateDelta, IllFormedDiagram, NotSimple
from .invariants import PERTURBATIVE, delta_pm_sl21, kirby_color_sl21, mdim_pert_sl21
from .repr_sl21 import (
    WeightModule,
    dual,
    make_sigma,
    make_standard,
    make_typical,
    sigma_weight,
)

OPS = ("id", "cup", "cupP", "cap", "capP", "crossP", "crossN", "twistP", "twistN")


@dataclass(frozen=True)
class Color:
    """Color of a strand.

    ``kind`` is ``"typical"`` (``a``, ``c``), ``"standard"``, ``"sigma"``
    (``k``, ``zbar``) or ``"omega"`` (Kirby color of degree ``a mod Z``).
    ``label`` names the component an omega color belongs to.
    """

    kind: str
    a: complex = 0.0
    c: int = 0
    k: int = 0
    zbar: int = 0
    label: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in ("typical", "omega"):
            out["a"] = [float(np.real(self.a)), float(np.imag(self.a))]
        if self.kind == "typical":
            out["c"] = self.c
        if self.kind == "sigma":
            out.update(k=self.k, zbar=self.zbar)
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Color":
        a = obj.get("a", 0.0)
        if isinstance(a, (list, tuple)):
            a = complex(a[0], a[1])
        return cls(obj["kind"], complex(a), int(obj.get("c", 0)), int(obj.get("k", 0)),
                   int(obj.get("zbar", 0)), obj.get("label", ""))


def typical(a: complex, c: int = 0) -> Color:
    return Color("typical", complex(a), int(c))


def omega(g: complex, label: str) -> Color:
    return Color("omega", complex(g), label=label)


@dataclass(frozen=True)
class Strand:
    color: Color
    dual: bool = False

    @property
    def flipped(self) -> "Strand":
        return Strand(self.color, not self.dual)


@dataclass(frozen=True)
class Slice:
    """One elementary piece.

    ``cup``/``cupP`` insert ``[B, B*]``/``[B*, B]`` at ``pos``; ``cap``/``capP``
    remove ``[B*, B]``/``[B, B*]`` starting at ``pos``. Crossings act on the
    strands at ``pos, pos+1``; twists on the strand at ``pos``.
    """

    op: str
    pos: int
    color: Color | None = None

    def to_json(self) -> dict:
        out = {"op": self.op, "pos": self.pos}
        if self.color is not None:
            out["color"] = self.color.to_json()
        return out


@dataclass
class MorseDiagram:
    bottom: list
    slices: list = field(default_factory=list)

    def boundaries(self) -> list[list[Strand]]:
        """Strand lists after each slice; raises :class:`IllFormedDiagram`."""
        cur = list(self.bottom)
        out = [list(cur)]
        for i, s in enumerate(self.slices):
            if s.op not in OPS:
                raise IllFormedDiagram(f"slice {i}: unknown op {s.op!r}")
            need = {"id": 0, "cup": 0, "cupP": 0, "cap": 2, "capP": 2,
                    "crossP": 2, "crossN": 2, "twistP": 1, "twistN": 1}[s.op]
            if s.pos < 0 or s.pos + need > len(cur) or (need == 0 and s.pos > len(cur)):
                raise IllFormedDiagram(f"slice {i}: position {s.pos} out of range for {len(cur)} strands")
            if s.op in ("cup", "cupP"):
                if s.color is None:
                    raise IllFormedDiagram(f"slice {i}: {s.op} needs a color")
                pair = [Strand(s.color), Strand(s.color, True)]
                cur[s.pos:s.pos] = pair if s.op == "cup" else pair[::-1]
            elif s.op in ("cap", "capP"):
                left, right = cur[s.pos], cur[s.pos + 1]
                if left.color != right.color or left.dual == right.dual:
                    raise IllFormedDiagram(f"slice {i}: cap on mismatched strands")
                if (s.op == "cap") != left.dual:
                    raise IllFormedDiagram(f"slice {i}: {s.op} has the wrong orientation")
                del cur[s.pos:s.pos + 2]
            elif s.op in ("crossP", "crossN"):
                cur[s.pos], cur[s.pos + 1] = cur[s.pos + 1], cur[s.pos]
            out.append(list(cur))
        return out

    @property
    def top(self) -> list:
        return self.boundaries()[-1]

    def colors(self) -> set:
        cs = {s.color for s in self.bottom}
        cs |= {s.color for s in self.slices if s.color is not None}
        return cs

    def substitute(self, mapping: dict) -> "MorseDiagram":
        def sub(c):
            return mapping.get(c, c)
        return MorseDiagram([Strand(sub(s.color), s.dual) for s in self.bottom],
                            [replace(s, color=sub(s.color)) if s.color is not None else s for s in self.slices])

    def to_json(self) -> dict:
        return {"bottom": [{"color": s.color.to_json(), "dual": s.dual} for s in self.bottom],
                "slices": [s.to_json() for s in self.slices]}

    @classmethod
    def from_json(cls, obj: dict) -> "MorseDiagram":
        bottom = [Strand(Color.from_json(s["color"]), bool(s.get("dual", False))) for s in obj.get("bottom", [])]
        slices = []
        for s in obj.get("slices", []):
            col = s.get("color")
            slices.append(Slice(s["op"], int(s["pos"]), Color.from_json(col) if col else None))
        return cls(bottom, slices)


class Evaluator:
    """Evaluates diagrams at a fixed ``ell``, caching modules and crossing matrices."""

    def __init__(self, ell: int, conv: br.Conventions = br.CONVENTIONS):
        self.ell = ell
        self.conv = conv
        self._mods: dict = {}
        self._ops: dict = {}

    def module(self, strand: Strand) -> WeightModule:
        key = (strand.color.kind, strand.color.a, strand.color.c, strand.color.k, strand.color.zbar, strand.dual)
        if key not in self._mods:
            if strand.dual:
                self._mods[key] = dual(self.module(Strand(strand.color)))
            else:
                self._mods[key] = self._base(strand.color)
        return self._mods[key]

    def _base(self, col: Color) -> WeightModule:
        if col.kind == "typical":
            return make_typical(col.a, col.c, self.ell)
        if col.kind == "standard":
            return make_standard(self.ell)
        if col.kind == "sigma":
            return make_sigma(col.zbar, sigma_weight(self.ell, col.k))
        if col.kind == "omega":
            raise IllFormedDiagram("omega colors must be expanded with expand_kirby first")
        raise IllFormedDiagram(f"unknown color kind {col.kind!r}")

    def _cached(self, key, fn):
        if key not in self._ops:
            self._ops[key] = fn()
        return self._ops[key]

    def piece(self, s: Slice, cur: list) -> tuple[np.ndarray, int, list[int]]:
        """Matrix, number of input strands and output dimensions of a slice."""
        if s.op == "id":
            return np.ones((1, 1)), 0, []
        if s.op in ("cup", "cupP"):
            B = self.module(Strand(s.color))
            M = br.coev_left(B) if s.op == "cup" else br.coev_right(B)
            return M, 0, [B.dim, B.dim]
        if s.op in ("cap", "capP"):
            B = self.module(Strand(cur[s.pos].color))
            M = br.ev_left(B) if s.op == "cap" else br.ev_right(B)
            return M, 2, []
        if s.op in ("crossP", "crossN"):
            X, Y = self.module(cur[s.pos]), self.module(cur[s.pos + 1])
            if s.op == "crossP":
                M = self._cached(("c", id(X), id(Y)), lambda: br.braiding(X, Y, self.conv))
            else:
                M = self._cached(("ci", id(X), id(Y)), lambda: br.braiding_inv(X, Y, self.conv))
            return M, 2, [Y.dim, X.dim]
        X = self.module(cur[s.pos])
        th = self._cached(("t", id(X)), lambda: br.twist_op(X, self.conv))
        if s.op == "twistN":
            th = self._cached(("ti", id(X)), lambda: np.linalg.inv(th))
        return th, 1, [X.dim]

    def evaluate(self, d: MorseDiagram) -> np.ndarray:
        """Matrix of the tangle, shape ``(dim top, dim bottom)``."""
        bounds = d.boundaries()
        dims = [self.module(s).dim for s in d.bottom]
        total = int(np.prod(dims)) if dims else 1
        T = np.eye(total, dtype=complex).reshape(*dims, total)
        for s, cur in zip(d.slices, bounds[:-1]):
            M, n_in, out_dims = self.piece(s, cur)
            T = _apply(T, M, s.pos, n_in, out_dims)
        top = [self.module(s).dim for s in bounds[-1]]
        return T.reshape(int(np.prod(top)) if top else 1, total)


def _apply(T: np.ndarray, M: np.ndarray, pos: int, n_in: int, out_dims: list[int]) -> np.ndarray:
    in_axes = list(range(pos, pos + n_in))
    in_dims = [T.shape[i] for i in in_axes]
    Mt = M.reshape(*out_dims, *in_dims)
    k = len(out_dims)
    R = np.tensordot(Mt, T, axes=(list(range(k, k + n_in)), in_axes))
    return np.moveaxis(R, list(range(k)), list(range(pos, pos + k)))


def evaluate(d: MorseDiagram, ell: int) -> np.ndarray:
    return Evaluator(ell).evaluate(d)


# renormalised invariants

def strand_mdim(strand: Strand, ell: int) -> complex:
    """Perturbative modified dimension of a typical strand color."""
    col = strand.color
    if col.kind != "typical":
        raise NotSimple(f"cut strand must be typical, got {col.kind}")
    a = -col.a - col.c - 1 if strand.dual else col.a
    return mdim_pert_sl21(a, col.c, ell)


def scalar_of(M: np.ndarray, tol: float = 1e-8) -> complex:
    """Scalar ``s`` with ``M = s Id``; raises :class:`NotSimple` otherwise."""
    s = complex(M[0, 0])
    scale = max(1.0, abs(s))
    if M.shape[0] != M.shape[1] or np.abs(M - s * np.eye(M.shape[0])).max() > tol * scale:
        raise NotSimple("cut endomorphism is not a scalar")
    return s


def f_prime(d: MorseDiagram, ell: int, ideal: str = PERTURBATIVE, ev: Evaluator | None = None) -> complex:
    """Renormalised invariant of a (1,1)-tangle whose open strand is the cut.

    Returns ``d(V) <f>`` where ``f = <f> Id_V`` is the tangle's matrix.
    """
    if ideal != PERTURBATIVE:
        raise ConfigError("explicit sl(2|1) modules live in the perturbative ideal; use ideal='pert'")
    if len(d.bottom) != 1:
        raise IllFormedDiagram("f_prime needs a (1,1)-tangle: exactly one open strand")
    top = d.top
    if len(top) != 1 or top[0] != d.bottom[0]:
        raise IllFormedDiagram("open strand must leave with the color and orientation it entered")
    ev = ev or Evaluator(ell)
    return strand_mdim(d.bottom[0], ell) * scalar_of(ev.evaluate(d))


def omega_labels(d: MorseDiagram) -> list[str]:
    return sorted({c.label for c in d.colors() if c.kind == "omega"})


def expand_kirby(d: MorseDiagram, ell: int) -> list[tuple[complex, MorseDiagram]]:
    """Multilinear expansion of every omega-colored component.

    Zero-coefficient summands are dropped; the order is canonical.
    """
    omegas = {}
    for c in d.colors():
        if c.kind == "omega":
            if c.label in omegas and omegas[c.label] != c:
                raise IllFormedDiagram(f"component {c.label!r} has two different omega colors")
            omegas[c.label] = c
    labels = sorted(omegas)
    if not labels:
        return [(1.0 + 0j, d)]
    per = [[(t.coeff, typical(t.alpha, t.c)) for t in kirby_color_sl21(omegas[lab].a, ell, drop_zero=True)]
           for lab in labels]
    out = []
    for combo in itertools.product(*per):
        w = complex(np.prod([t[0] for t in combo]))
        mapping = {omegas[lab]: t[1] for lab, t in zip(labels, combo)}
        out.append((w, d.substitute(mapping)))
    return out


@dataclass
class SurgeryPresentation:
    """A (1,1)-tangle with omega-colored surgery components and a typical cut strand.

    ``linking_matrix`` is indexed by the sorted omega labels.
    """

    diagram: MorseDiagram
    linking_matrix: np.ndarray

    def __post_init__(self):
        L = np.atleast_2d(np.asarray(self.linking_matrix, dtype=float)) if np.size(self.linking_matrix) else np.zeros((0, 0))
        if L.shape[0] != L.shape[1] or not np.allclose(L, L.T):
            raise IllFormedDiagram("linking matrix must be square and symmetric")
        if L.shape[0] != len(omega_labels(self.diagram)):
            raise IllFormedDiagram("linking matrix size must equal the number of omega components")
        self.linking_matrix = L

    @property
    def signature(self) -> tuple[int, int]:
        if self.linking_matrix.size == 0:
            return 0, 0
        ev = np.linalg.eigvalsh(self.linking_matrix)
        return int(np.sum(ev > 1e-9)), int(np.sum(ev < -1e-9))

    @property
    def gradings(self) -> list[complex]:
        cols = {c.label: c for c in self.diagram.colors() if c.kind == "omega"}
        return [cols[lab].a for lab in sorted(cols)]

    def to_json(self) -> dict:
        return {**self.diagram.to_json(), "linking_matrix": self.linking_matrix.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "SurgeryPresentation":
        return cls(MorseDiagram.from_json(obj), np.asarray(obj.get("linking_matrix", []), dtype=float))


def cgp_invariant(p: SurgeryPresentation, ell: int, ev: Evaluator | None = None) -> complex:
    """``F'(expanded diagram) / (Delta_+**b_+ Delta_-**b_-)``."""
    for g in p.gradings:
        if abs(2 * g - round((2 * g).real)) < 1e-9:
            raise CriticalGrading(f"grading {g} is critical")
    bp, bm = p.signature
    dp, dm = delta_pm_sl21(+1, ell), delta_pm_sl21(-1, ell)
    if abs(dp * dm) < 1e-12:
        raise DegenerateDelta("Delta_+ Delta_- vanishes")
    ev = ev or Evaluator(ell)
    total = sum(w * f_prime(sub, ell, ev=ev) for w, sub in expand_kirby(p.diagram, ell))
    return total / (dp**bp * dm**bm)


# standard diagrams

def encircle(bundle: list[Strand], circle: Color, framing: int = 0, positive: bool = True) -> list[Slice]:
    """Slices adding a closed ``circle`` strand around all of ``bundle``.

    The circle is born to the right, passes behind-then-in-front of the bundle
    through ``2 len(bundle)`` crossings, gets ``framing`` kinks and closes.
    """
    k = len(bundle)
    cross = "crossP" if positive else "crossN"
    out = [Slice("cup", k, circle)]
    for i in range(k - 1, -1, -1):
        out.append(Slice(cross, i))
    for i in range(k):
        out.append(Slice(cross, i))
    kink = "twistP" if framing > 0 else "twistN"
    out += [Slice(kink, k) for _ in range(abs(framing))]
    out.append(Slice("capP", k))
    return out


def hopf_tangle(cut: Color, circle: Color, positive: bool = True) -> MorseDiagram:
    """Open Hopf link: ``cut`` strand encircled by a closed ``circle``."""
    b = [Strand(cut)]
    return MorseDiagram(b, encircle(b, circle, positive=positive))


def kink(strand_count: int, pos: int, sign: int) -> list[Slice]:
    op = "twistP" if sign > 0 else "twistN"
    return [Slice(op, pos) for _ in range(abs(sign))]


def grading(strand: Strand) -> complex:
    """Degree ``a mod Z`` of a typical strand (negated for a dual strand)."""
    return -strand.color.a if strand.dual else strand.color.a


def admissible_grading(enclosed: list[Strand], framing: int) -> complex:
    """Degree of an omega circle with the given framing around ``enclosed``.

    The circle links each enclosed strand once positively; the degrees must
    satisfy ``framing * g + sum(g_strands) = 0`` so that the grading extends
    over the surgered solid torus.
    """
    return -sum(grading(s) for s in enclosed) / framing


def stabilized(cut: Color, sign: int, label: str = "K") -> SurgeryPresentation:
    """Cut strand with a ``sign``-framed omega circle around it and a compensating kink."""
    b = [Strand(cut)]
    g = admissible_grading(b, sign)
    slices = encircle(b, omega(g, label), framing=sign) + kink(1, 0, sign)
    return SurgeryPresentation(MorseDiagram(b, slices), np.array([[float(sign)]]))


def bare(cut: Color) -> SurgeryPresentation:
    return SurgeryPresentation(MorseDiagram([Strand(cut)], []), np.zeros((0, 0)))


def slide_pair(cut: Color, loop: Color, sign: int = 1) -> tuple[SurgeryPresentation, SurgeryPresentation]:
    """Two presentations related by sliding an arc of ``loop`` over an omega circle.

    In both, the cut strand is linked once by a closed ``loop`` component. In
    the first the ``sign``-framed omega circle encircles the cut strand alone;
    in the second it also encircles the arc of ``loop``, and its degree moves
    by the degree of ``loop`` as the slide dictates. Each carries the kinks and
    crossings that restore the framing of what the circle encloses.
    """
    V, W = Strand(cut), Strand(loop)
    g1 = admissible_grading([V], sign)
    g2 = admissible_grading([V, W], sign)
    first = MorseDiagram([V], encircle([V], loop) + encircle([V], omega(g1, "K"), framing=sign) + kink(1, 0, sign))
    # second: open the loop, let the omega circle enclose [V, W], then close
    s = [Slice("cup", 1, loop)]                            # [V, W, W*]
    s += [Slice("crossP", 0)]                              # [W, V, W*]
    s += [Slice("crossP", 0)]                              # [V, W, W*]
    s += encircle([V, W], omega(g2, "K"), framing=sign)    # omega around V (x) W
    s += _bundle_twist(sign)                               # theta_{V (x) W}**sign
    s += [Slice("capP", 1)]
    second = MorseDiagram([V], s)
    L = np.array([[float(sign)]])
    return SurgeryPresentation(first, L), SurgeryPresentation(second, L)


def _bundle_twist(sign: int) -> list[Slice]:
    """``theta_{X (x) Y} = c_{Y,X} c_{X,Y} (theta_X (x) theta_Y)`` on strands 0, 1."""
    tw = "twistP" if sign > 0 else "twistN"
    cr = "crossP" if sign > 0 else "crossN"
    return [Slice(tw, 0), Slice(tw, 1), Slice(cr, 0), Slice(cr, 0)]


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
