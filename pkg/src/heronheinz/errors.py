"""Exception types raised across the package."""

from __future__ import annotations


class HeronHeinzError(Exception):
    """Base class for every error raised by :mod:`heronheinz`."""


class DimensionError(HeronHeinzError, ValueError):
    pass


class SymmetryError(HeronHeinzError, ValueError):
    pass


class NotPSDError(HeronHeinzError, ValueError):
    pass


class SingularError(HeronHeinzError, ArithmeticError):
    pass


class ConvergenceError(HeronHeinzError, ArithmeticError):
    pass


class RangeError(HeronHeinzError, ValueError):
    """A parameter lies outside the domain where an operation is defined."""

    def __init__(self, message: str, param: str | None = None):
        super().__init__(message)
        self.param = param


class SpectrumBoundsError(HeronHeinzError, ValueError):
    """Supplied ``(m, M)`` do not enclose the spectra they are claimed to bound."""


class DomainError(HeronHeinzError, ValueError):
    """Non-finite values where finite reals are required."""


class ConfigError(HeronHeinzError, ValueError):
    """Invalid suite configuration; ``param`` names the offending field."""

    def __init__(self, message: str, param: str | None = None):
        super().__init__(message)
        self.param = param
