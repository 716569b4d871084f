"""Exception types shared across the package."""

from __future__ import annotations


class AccelSeriesError(Exception):
    """Base class for every error raised by this package."""


class ParseError(AccelSeriesError):
    """Malformed decimal text (optionally tagged with a 1-based line number)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ExactnessError(AccelSeriesError):
    """The rational backend was asked for an irrational operation."""


class ReferenceZeroError(AccelSeriesError):
    """Relative error against a zero reference; caller should fall back to absolute error."""


class TermError(AccelSeriesError):
    """A term provider failed to produce the term with the given index."""

    def __init__(self, n: int, message: str | None = None):
        super().__init__(message or f"term provider failed at index {n}")
        self.n = n


class DegenerateTermError(AccelSeriesError):
    """An operation hit a zero term where a nonzero one is required."""


class AlternationError(AccelSeriesError):
    """Terms violate the strict positive/alternating-sign contract."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RegistryError(AccelSeriesError):
    """Unknown builtin series name or invalid parameters."""


class RangeError(AccelSeriesError):
    """A table or diagnostic entry outside the computed range was requested."""


class DegenerateDifferenceError(AccelSeriesError):
    """Zero second difference in the Aitken formula."""

    def __init__(self, n: int):
        super().__init__(f"zero second difference at index {n}")
        self.n = n


class DegenerateWeightError(AccelSeriesError):
    """Zero weight denominator while building a table entry."""

    def __init__(self, k: int, n: int, message: str | None = None):
        super().__init__(message or f"zero weight denominator at entry (k={k}, n={n})")
        self.k = k
        self.n = n


class DegenerateDenominatorError(AccelSeriesError):
    """Zero q denominator in a Levin/Weniger realization."""

    def __init__(self, k: int, n: int, message: str | None = None):
        super().__init__(message or f"zero denominator at entry (k={k}, n={n})")
        self.k = k
        self.n = n


class DegenerateDiagnosticError(AccelSeriesError):
    """A diagnostic ratio was requested where D vanishes."""


class PrecisionError(AccelSeriesError):
    """The backend precision is insufficient for the requested quantity."""
