"""Quantum sl(m|n) at odd roots of unity: weights, modified dimensions, braidings and surgery invariants."""

from .errors import (
    ConfigError,
    CriticalGrading,
    DegenerateDelta,
    DegenerateWeight,
    IllFormedDiagram,
    MismatchedDatum,
    NotInAlcove,
    NotInLambdaZ,
    NotSimple,
    NotTypical,
    RelmodError,
)
from .rootdata import RootDatum, Weight
from .scalars import RootOfUnity, Tolerance

__all__ = [
    "ConfigError",
    "CriticalGrading",
    "DegenerateDelta",
    "DegenerateWeight",
    "IllFormedDiagram",
    "MismatchedDatum",
    "NotInAlcove",
    "NotInLambdaZ",
    "NotSimple",
    "NotTypical",
    "RelmodError",
    "RootDatum",
    "RootOfUnity",
    "Tolerance",
    "Weight",
]
