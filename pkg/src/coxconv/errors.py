"""Exception hierarchy shared by the algebraic and geometric layers."""

from __future__ import annotations


class CoxeterError(Exception):
    """Base class for every error raised by this package."""


class InvalidMatrix(CoxeterError, ValueError):
    """The supplied table is not a Coxeter matrix."""


class UnsupportedMatrix(CoxeterError, ValueError):
    """No exact arithmetic backend is available for this Coxeter matrix."""


class InvalidWord(CoxeterError, ValueError):
    """A word contains a letter outside ``1..rank``."""


class SystemMismatch(CoxeterError, ValueError):
    """Two operands belong to different Coxeter systems."""


class InfiniteGroup(CoxeterError):
    """The operation needs a finite group and none was guaranteed."""


class CapExceeded(CoxeterError):
    """A configured enumeration or sweep cap was exceeded."""


class TheoremViolation(CoxeterError):
    """Raised when a set that should have a unique extremum does not."""


class NoUniqueMin(TheoremViolation):
    """No element of the set lies below all the others."""


class NoUniqueMax(TheoremViolation):
    """No element of the set lies above all the others."""


class PreconditionFailed(CoxeterError, ValueError):
    """The hypotheses of a property check are not met by the arguments."""


class NotReduced(CoxeterError, ValueError):
    """A word that was required to be reduced is not."""


class DimensionMismatch(CoxeterError, ValueError):
    """Flags or matrices of incompatible sizes or fields."""


class NotInIntersection(CoxeterError, ValueError):
    """A matrix does not stabilise both flags."""


class FieldTooSmall(CoxeterError, ValueError):
    """Torus computations are not meaningful over this field."""
