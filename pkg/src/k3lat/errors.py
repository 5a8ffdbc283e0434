"""Exception types raised by the lattice engine."""

from __future__ import annotations


class K3LatError(Exception):
    """Base class for all engine errors."""


class ShapeError(K3LatError):
    """A matrix or vector has the wrong dimensions for the requested operation."""


class LatticeMismatch(K3LatError):
    """Two classes that should live on the same lattice do not."""


class DegenerateLattice(K3LatError):
    """The Gram matrix is singular where a nondegenerate form is required."""


class NotARoot(K3LatError):
    """A reflection was requested in a class whose square is not -2."""


class SignatureError(K3LatError):
    """The lattice does not have the hyperbolic signature (1, rank-1)."""


class NotPositiveClass(K3LatError):
    """An operation needed a class of positive square."""


class NeedsAmpleContext(K3LatError):
    """An effectivity decision was requested against a merely big-and-nef reference."""


class NotEffective(K3LatError):
    """An operation's precondition required an effective class."""


class NotPrimitive(K3LatError):
    """A primitive divisor class was required (gcd of coordinates 1)."""


class ParityError(K3LatError):
    """A genus or square had the wrong parity for the requested computation."""


class Disconnected(K3LatError):
    """A connected curve configuration was required."""


class ClassMismatch(K3LatError):
    """A configuration's total class does not match the claimed multiple of the polarization."""


class TooLarge(K3LatError):
    """A search space exceeds the documented exhaustive-scan guard."""


class RangeError(K3LatError):
    """A numeric parameter is outside the documented range."""


class InvalidContext(K3LatError):
    """A polarized context's reference class fails its claimed status."""


class ScenarioError(K3LatError):
    """A scenario file failed to parse; carries position information."""

    def __init__(self, message: str, line: int, column: int = 1):
        shown = f"line {line}, column {column}: {message}" if line else message
        super().__init__(shown)
        self.message = message
        self.line = line
        self.column = column
