"""Precision backends: binary64, fixed-precision decimal, and exact rationals.

All transform and diagnostic code in this package is written once against a
small "real number" contract: values support +, -, *, / and ** with integer
exponents, mix freely with Python ints, and compare with 0.  Three
interchangeable backends satisfy it:

* binary64  -- plain Python floats, about 15 significant digits;
* decimal   -- ``decimal.Decimal`` at a fixed ``digits10`` (default 19);
* rational  -- ``fractions.Fraction``, exact arithmetic (the oracle).

A context object carries the precision, the constructors, and the handful of
irrational helpers term providers need (sqrt, nth_root, pow_real, exp1).
Decimal arithmetic must run inside ``with ctx.guard():`` so the thread-local
decimal context has the right precision; the other backends return a no-op
guard, so generic code can always take the ``with`` block.

Everything here has value semantics; contexts are immutable and safe to share
between threads.
"""

from __future__ import annotations

import contextlib
import decimal
import math
import re
from fractions import Fraction

from .errors import ExactnessError, ParseError, ReferenceZeroError

__all__ = [
    "Binary64Context",
    "DecimalContext",
    "RationalContext",
    "context",
    "context_for_digits",
    "parse_decimal",
    "rel_error",
]

# Optional sign, digits with optional fraction (or bare fraction), optional
# exponent.  Deliberately excludes inf/nan/underscores that float() accepts.
_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def _check_text(text: str) -> str:
    s = text.strip()
    if not _DECIMAL_RE.match(s):
        raise ParseError(f"not a decimal number: {text!r}")
    return s


class Binary64Context:
    """IEEE 754 double precision via Python floats."""

    name = "binary64"
    digits10 = 15
    exact = False
    # Levin/Weniger p/q rows are rescaled in this backend only; the decimal
    # backend's exponent range makes overflow unreachable in practice.
    rescale_pq = True

    def guard(self):
        return contextlib.nullcontext()

    def from_int(self, i: int) -> float:
        return float(i)

    def from_fraction(self, fr: Fraction) -> float:
        # int/int true division is correctly rounded even for big integers.
        return fr.numerator / fr.denominator

    def parse(self, text: str) -> float:
        v = float(_check_text(text))
        if not math.isfinite(v):
            raise ParseError(f"value out of range: {text!r}")
        return v

    def is_finite(self, v) -> bool:
        return math.isfinite(v)

    def sqrt(self, v):
        return math.sqrt(v)

    def nth_root(self, v, k: int):
        return v ** (1.0 / k)

    def pow_real(self, base, exponent):
        return base ** exponent

    def exp1(self) -> float:
        return math.e

    def log10(self, v):
        return math.log10(v)

    def format(self, v) -> str:
        return repr(float(v))


class DecimalContext:
    """Fixed-precision decimal floating point (software, bit-reproducible)."""

    exact = False
    rescale_pq = False

    def __init__(self, digits10: int = 19):
        if digits10 < 1:
            raise ValueError("digits10 must be positive")
        self.digits10 = digits10
        self.name = f"decimal{digits10}"
        self._ctx = decimal.Context(prec=digits10)

    def guard(self):
        return decimal.localcontext(self._ctx)

    def from_int(self, i: int) -> decimal.Decimal:
        with self.guard():
            return +decimal.Decimal(i)

    def from_fraction(self, fr: Fraction) -> decimal.Decimal:
        with self.guard():
            return decimal.Decimal(fr.numerator) / decimal.Decimal(fr.denominator)

    def parse(self, text: str) -> decimal.Decimal:
        s = _check_text(text)
        with self.guard():
            return +decimal.Decimal(s)

    def is_finite(self, v) -> bool:
        return v.is_finite()

    def sqrt(self, v):
        with self.guard():
            return v.sqrt()

    def nth_root(self, v, k: int):
        with self.guard():
            if v == 0:
                return decimal.Decimal(0)
            return v ** (decimal.Decimal(1) / k)

    def pow_real(self, base, exponent):
        with self.guard():
            if base == 0:
                return decimal.Decimal(0)
            return base ** exponent

    def exp1(self) -> decimal.Decimal:
        with self.guard():
            return decimal.Decimal(1).exp()

    def log10(self, v):
        with self.guard():
            return v.log10()

    def format(self, v) -> str:
        return str(v)


class RationalContext:
    """Exact arithmetic over fractions.Fraction; the brute-force oracle.

    digits10 is None: results carry no rounding error at all.  Irrational
    operations are refused with ExactnessError so the oracle is only used
    where exactness is meaningful.
    """

    name = "rational"
    digits10 = None
    exact = True
    rescale_pq = False

    def guard(self):
        return contextlib.nullcontext()

    def from_int(self, i: int) -> Fraction:
        return Fraction(i)

    def from_fraction(self, fr: Fraction) -> Fraction:
        return fr

    def parse(self, text: str) -> Fraction:
        s = _check_text(text)
        return Fraction(decimal.Decimal(s))

    def is_finite(self, v) -> bool:
        return True

    def sqrt(self, v):
        raise ExactnessError("square root is not available in the rational backend")

    def nth_root(self, v, k: int):
        raise ExactnessError("roots are not available in the rational backend")

    def pow_real(self, base, exponent):
        raise ExactnessError("real powers are not available in the rational backend")

    def exp1(self):
        raise ExactnessError("e is not representable in the rational backend")

    def log10(self, v):
        # Only used for digit reporting; a float result is fine there.
        v = Fraction(v)
        if v <= 0:
            raise ValueError("log10 requires a positive value")
        return math.log10(v.numerator) - math.log10(v.denominator)

    def format(self, v) -> str:
        return str(v)


def context(backend: str = "binary64", digits10: int | None = None):
    """Build a precision context by backend name.

    backend: "binary64", "decimal", or "rational".  digits10 applies to the
    decimal backend only (default 19).
    """
    if backend == "binary64":
        if digits10 not in (None, 15):
            raise ValueError("binary64 provides 15 significant digits; digits10 must be 15")
        return Binary64Context()
    if backend == "decimal":
        return DecimalContext(digits10 if digits10 is not None else 19)
    if backend == "rational":
        if digits10 is not None:
            raise ValueError("the rational backend has no digits10 parameter")
        return RationalContext()
    raise ValueError(f"unknown backend {backend!r}")


def context_for_digits(digits10: int):
    """Select a float context from the single digits10 parameter.

    15 means binary64; 19 or more selects the decimal backend at that
    precision.  Values in between promise more than binary64 delivers and
    less than the decimal backend's supported range, so they are rejected.
    """
    if digits10 == 15:
        return Binary64Context()
    if digits10 >= 19:
        return DecimalContext(digits10)
    raise ValueError("digits10 must be 15 (binary64) or >= 19 (decimal)")


def parse_decimal(text: str, ctx):
    """Parse decimal text to the nearest representable value in ctx."""
    return ctx.parse(text)


def rel_error(approx, reference, ctx=None):
    """Return |approx/reference - 1|.

    Raises ReferenceZeroError when reference == 0 so the caller can fall back
    to an absolute-error metric.
    """
    guard = ctx.guard() if ctx is not None else contextlib.nullcontext()
    with guard:
        if reference == 0:
            raise ReferenceZeroError("relative error against a zero reference")
        return abs(approx / reference - 1)
