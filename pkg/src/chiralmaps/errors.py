"""Exception hierarchy shared by the package."""

from __future__ import annotations


class MapError(Exception):
    """Base class for every error raised by chiralmaps."""


class DegreeMismatch(MapError, ValueError):
    pass


class DartOutOfRange(MapError, IndexError):
    pass


class ValidationError(MapError, ValueError):
    """Raw data does not describe an orientably-regular map."""


class NotTransitive(ValidationError):
    pass


class NotRegular(ValidationError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EdgeWordNotInvolution(ValidationError):
    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class TypeMismatch(MapError, ValueError):
    pass


class SizeLimitExceeded(MapError, ValueError):
    pass


class StructureViolation(MapError, AssertionError):
    """A consequence the theory guarantees failed to hold: an internal bug."""


class ParityViolation(MapError, ValueError):
    pass


class NotExceptional(MapError, ValueError):
    pass


class UnknownName(MapError, KeyError):
    pass


class PropertyDrift(MapError, AssertionError):
    pass


class NonHyperbolicType(MapError, ValueError):
    pass


class NoSuitableBase(MapError, RuntimeError):
    pass


class Anomaly(MapError, RuntimeError):
    """An outcome the construction guarantees cannot happen (indicates a bug)."""


class MapFileError(MapError, ValueError):
    """A map or certificate file could not be read.

    ``kind`` is ``"json"``, ``"schema"`` or ``"validation"``.
    """

    def __init__(self, message, kind, field=None, cause=None):
        super().__init__(message)
        self.kind = kind
        self.field = field
        self.cause = cause
