"""Exception types shared across the package."""


class RelmodError(Exception):
    """Base class for domain errors."""


class ConfigError(RelmodError, ValueError):
    """Invalid (m, n, ell) or tolerance configuration."""


class MismatchedDatum(RelmodError, ValueError):
    """Two weights live over different root data."""


class NotTypical(RelmodError, ValueError):
    """A weight required to be typical is atypical."""


class NotInAlcove(RelmodError, ValueError):
    """A weight lies outside the closed alcove or has a non-integral c-part."""


class DegenerateWeight(RelmodError, ZeroDivisionError):
    """A denominator of a closed formula vanishes at this weight."""


class CriticalGrading(RelmodError, ValueError):
    """The grading class lies in the critical set (1/2)Z/Z."""


class NotInLambdaZ(RelmodError, ValueError):
    """The weight does not define a one-dimensional sigma module."""


class IllFormedDiagram(RelmodError, ValueError):
    """Adjacent slices of a Morse diagram do not compose."""


class NotSimple(RelmodError, ValueError):
    """A cut endomorphism is not a scalar multiple of the identity."""


class DegenerateDelta(RelmodError, ZeroDivisionError):
    """One of the stabilisation scalars vanishes."""
