"""Exception types raised across the package."""
from __future__ import annotations


class RnSymError(ValueError):
    """Base class for all domain errors."""


class ForeignGeneratorError(RnSymError):
    """An element or derivation was combined with one from another algebra."""


class DegreeError(RnSymError):
    """A value has the wrong degree for the slot it is placed in."""


class NotClosedError(RnSymError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotVectorFieldError(RnSymError):
    """A derivation could not be written as a contraction against the basis fields."""


class JacobiError(RnSymError):
    def __init__(self, message, quadruple=None):
        super().__init__(message)
        self.quadruple = quadruple


class NotHomomorphismError(RnSymError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class MembershipError(RnSymError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DecodeError(RnSymError):
    """A literal derivation does not have the shape of a typed symmetry."""


class ParseError(RnSymError):
    def __init__(self, message, column=None, path=None):
        loc = []
        if path:
            loc.append(path)
        if column is not None:
            loc.append(f"col {column}")
        super().__init__(f"{': '.join(loc)}: {message}" if loc else message)
        self.column = column
        self.path = path
