"""Alternating series: term providers, partial sums, beta ratios, builtins.

A series here is the data of Sum (-1)^n alpha_n with alpha_n > 0.  Providers
hand out the magnitudes alpha_0..alpha_m as one block in the arithmetic of a
given precision context; transforms request exactly the prefix they need.

The builtin registry covers the catalogue used by the test tables (seven
numbered examples plus parametric families).  Builtin terms are produced by
stable multiplicative recurrences on n (factorial ratios are updated via the
term ratio in closed form), never by evaluating factorials directly, so they
stay cheap and overflow-free for n up to ~10^4.

Known limits (or antilimits, for divergent members of the parametric
families) are evaluated on demand at the precision of the requesting context;
mpmath is used only here, never inside the transforms.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import mpmath as mp

from .errors import (
    AlternationError,
    DegenerateTermError,
    ParseError,
    RegistryError,
    TermError,
)

__all__ = [
    "AlternatingSeries",
    "partial_sums",
    "beta",
    "builtin",
    "builtin_names",
    "from_file",
    "scale_terms",
    "shift_first_term",
]


@dataclass(frozen=True)
class AlternatingSeries:
    """An alternating series given by the positive magnitudes of its terms.

    terms_fn(ctx, m) must return the block [alpha_0, ..., alpha_m] as values
    of the given precision context.  rational_ok says whether the provider is
    exact in the rational backend (False for providers needing roots or
    powers).  x, v, r describe the asymptotic form alpha_n ~ x^n n^v (series
    in n^(-1/r)); they are reporting metadata only and never feed the
    transforms.  limit_fn(ctx), when present, returns the limit (or
    antilimit) at the context's precision, or None if it cannot be
    represented there.
    """

    name: str
    terms_fn: Callable
    rational_ok: bool = True
    x: Fraction | None = None
    v: Fraction | float | None = None
    r: int | None = None
    limit_fn: Callable | None = field(default=None, repr=False)

    def terms(self, ctx, m: int) -> list:
        """Return [alpha_0..alpha_m], validated finite and positive."""
        if m < 0:
            raise ValueError("term index must be nonnegative")
        block = self.terms_fn(ctx, m)
        if len(block) != m + 1:
            raise TermError(m, f"provider returned {len(block)} terms, wanted {m + 1}")
        for n, val in enumerate(block):
            if not ctx.is_finite(val):
                raise TermError(n, f"term {n} is not finite")
            if val < 0 or (val == 0 and n > 0):
                # alpha_0 = 0 is tolerated (it only enters partial sums);
                # every later magnitude must be strictly positive.
                raise AlternationError(f"term magnitude {n} is not positive")
        return block

    def alpha(self, ctx, n: int):
        """The single magnitude alpha_n."""
        return self.terms(ctx, n)[n]

    def known_limit(self, ctx):
        """Limit/antilimit at ctx precision, or None when unknown there."""
        if self.limit_fn is None:
            return None
        return self.limit_fn(ctx)


def partial_sums(series: AlternatingSeries, ctx, m: int) -> list:
    """Partial sums s_0..s_m of Sum (-1)^n alpha_n."""
    al = series.terms(ctx, m)
    with ctx.guard():
        out = []
        s = ctx.from_int(0)
        for n, a in enumerate(al):
            s = s + a if n % 2 == 0 else s - a
            out.append(s)
    return out


def beta(series: AlternatingSeries, ctx, n: int):
    """The ratio beta_n = alpha_{n+1}/alpha_n."""
    al = series.terms(ctx, n + 1)
    if al[n] == 0:
        raise DegenerateTermError(f"beta_{n} undefined: alpha_{n} = 0")
    with ctx.guard():
        return al[n + 1] / al[n]


# --------------------------------------------------------------------------
# wrappers used by the property suite

def scale_terms(series: AlternatingSeries, c) -> AlternatingSeries:
    """The series with every magnitude multiplied by c > 0."""
    c = _as_fraction(c)
    if c <= 0:
        raise ValueError("scale factor must be positive")

    def terms_fn(ctx, m):
        block = series.terms_fn(ctx, m)
        with ctx.guard():
            return [v * c.numerator / c.denominator for v in block]

    limit_fn = None
    if series.limit_fn is not None:
        def limit_fn(ctx):
            base = series.limit_fn(ctx)
            if base is None:
                return None
            with ctx.guard():
                return base * c.numerator / c.denominator

    return AlternatingSeries(
        name=f"{series.name}*{c}",
        terms_fn=terms_fn,
        rational_ok=series.rational_ok,
        x=series.x, v=series.v, r=series.r,
        limit_fn=limit_fn,
    )


def shift_first_term(series: AlternatingSeries, delta) -> AlternatingSeries:
    """The series with alpha_0 replaced by alpha_0 + delta (shifts s by delta)."""
    delta = _as_fraction(delta)

    def terms_fn(ctx, m):
        block = list(series.terms_fn(ctx, m))
        with ctx.guard():
            block[0] = block[0] + ctx.from_fraction(delta)
        return block

    limit_fn = None
    if series.limit_fn is not None:
        def limit_fn(ctx):
            base = series.limit_fn(ctx)
            if base is None:
                return None
            with ctx.guard():
                return base + ctx.from_fraction(delta)

    return AlternatingSeries(
        name=f"{series.name}+d",
        terms_fn=terms_fn,
        rational_ok=series.rational_ok,
        x=series.x, v=series.v, r=series.r,
        limit_fn=limit_fn,
    )


# --------------------------------------------------------------------------
# term-provider builders

def _ratio_terms(first: Fraction, ratio: Callable[[int], Fraction]) -> Callable:
    """Provider for alpha_0 = first, alpha_{n+1} = alpha_n * ratio(n).

    The ratio is an exact fraction, applied as one multiply and one divide by
    integers, so the rational backend stays exact and float backends round
    once per operation.
    """

    def terms_fn(ctx, m):
        with ctx.guard():
            t = ctx.from_fraction(first)
            out = [t]
            for n in range(m):
                fr = ratio(n)
                t = t * fr.numerator / fr.denominator
                out.append(t)
        return out

    return terms_fn


def _reciprocal_terms(den: Callable[[int], int]) -> Callable:
    """Provider for alpha_n = 1/den(n) with integer den."""

    def terms_fn(ctx, m):
        one = ctx.from_int(1)
        with ctx.guard():
            return [one / den(n) for n in range(m + 1)]

    return terms_fn


# --------------------------------------------------------------------------
# reference limits

_LIMIT_CACHE: dict[tuple[str, int], str] = {}


def _mp_limit(key: str, builder: Callable) -> Callable:
    """Wrap an mpmath expression as a limit_fn, cached per precision."""

    def limit_fn(ctx):
        if ctx.exact:
            return None
        digits = ctx.digits10 + 10
        cached = _LIMIT_CACHE.get((key, digits))
        if cached is None:
            with mp.workdps(digits + 10):
                cached = mp.nstr(builder(), digits, strip_zeros=True)
            _LIMIT_CACHE[(key, digits)] = cached
        return ctx.parse(cached)

    return limit_fn


def _exact_limit(value: Fraction) -> Callable:
    def limit_fn(ctx):
        return ctx.from_fraction(value)

    return limit_fn


def _mpf(fr: Fraction):
    return mp.mpf(fr.numerator) / fr.denominator


# --------------------------------------------------------------------------
# builtin registry

def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, decimal.Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            try:
                return Fraction(decimal.Decimal(value))
            except decimal.InvalidOperation:
                raise RegistryError(f"cannot parse parameter value {value!r}") from None
    raise RegistryError(f"cannot parse parameter value {value!r}")


def _as_fraction_list(value) -> tuple[Fraction, ...]:
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
    else:
        try:
            parts = list(value)
        except TypeError:
            parts = [value]
    return tuple(_as_fraction(p) for p in parts)


def _example1() -> AlternatingSeries:
    return AlternatingSeries(
        name="example1",
        terms_fn=_reciprocal_terms(lambda n: n * n + 1),
        x=Fraction(1), v=Fraction(-2), r=1,
        limit_fn=_mp_limit("example1", lambda: (1 + mp.pi / mp.sinh(mp.pi)) / 2),
    )


def _example2() -> AlternatingSeries:
    # alpha_n = (2n+1)!/(4^n ((n+1)!)^2); ratio (2n+2)(2n+3)/(4(n+2)^2)
    return AlternatingSeries(
        name="example2",
        terms_fn=_ratio_terms(
            Fraction(1),
            lambda n: Fraction((2 * n + 2) * (2 * n + 3), 4 * (n + 2) ** 2),
        ),
        x=Fraction(1), v=Fraction(-3, 2), r=1,
        limit_fn=_mp_limit(
            "example2", lambda: 4 * mp.log(mp.mpf(1) / 2 + mp.sqrt(mp.mpf(1) / 2))
        ),
    )


def _example3() -> AlternatingSeries:
    return AlternatingSeries(
        name="example3",
        terms_fn=_reciprocal_terms(lambda n: n + 1),
        x=Fraction(1), v=Fraction(-1), r=1,
        limit_fn=_mp_limit("example3", lambda: mp.log(2)),
    )


def _example4(x=Fraction(2, 3)) -> AlternatingSeries:
    # alpha_n = (2n+2)! x^n / (4^n n! (n+2)!); ratio (2n+3)(2n+4) x/(4(n+1)(n+3))
    x = _as_fraction(x)
    if not 0 < x <= 1:
        raise RegistryError("example4 requires 0 < x <= 1")
    return AlternatingSeries(
        name="example4" if x == Fraction(2, 3) else f"example4(x={x})",
        terms_fn=_ratio_terms(
            Fraction(1),
            lambda n: Fraction((2 * n + 3) * (2 * n + 4), 4 * (n + 1) * (n + 3)) * x,
        ),
        x=x, v=Fraction(-1, 2), r=1,
        limit_fn=_mp_limit(
            f"example4:{x}",
            lambda: mp.hyp2f1(mp.mpf(3) / 2, 2, 3, -_mpf(x)),
        ),
    )


def _example5() -> AlternatingSeries:
    # alpha_n = (1/2)^n sqrt(n+1)
    def terms_fn(ctx, m):
        with ctx.guard():
            pw = ctx.from_int(1)
            out = []
            for n in range(m + 1):
                out.append(pw * ctx.sqrt(ctx.from_int(n + 1)))
                pw = pw / 2
        return out

    return AlternatingSeries(
        name="example5",
        terms_fn=terms_fn,
        rational_ok=False,
        x=Fraction(1, 2), v=Fraction(1, 2), r=1,
        limit_fn=_mp_limit(
            "example5", lambda: -2 * mp.polylog(mp.mpf(-1) / 2, mp.mpf(-1) / 2)
        ),
    )


def _example6() -> AlternatingSeries:
    # alpha_n = 1/(n + sqrt(n) + cbrt(n+1))
    def terms_fn(ctx, m):
        one = ctx.from_int(1)
        with ctx.guard():
            out = []
            for n in range(m + 1):
                den = n + ctx.sqrt(ctx.from_int(n)) + ctx.nth_root(ctx.from_int(n + 1), 3)
                out.append(one / den)
        return out

    return AlternatingSeries(
        name="example6",
        terms_fn=terms_fn,
        rational_ok=False,
        x=Fraction(1), v=Fraction(-1), r=6,
        limit_fn=_mp_limit(
            "example6",
            lambda: mp.nsum(
                lambda n: (-1) ** n / (n + mp.sqrt(n) + mp.cbrt(n + 1)), [0, mp.inf]
            ),
        ),
    )


def _example7() -> AlternatingSeries:
    # alpha_n = n^e / (n + (n+1)^(7/2)); alpha_0 = 0 is genuine
    def terms_fn(ctx, m):
        with ctx.guard():
            e = ctx.exp1()
            out = [ctx.from_int(0)]
            for n in range(1, m + 1):
                num = ctx.pow_real(ctx.from_int(n), e)
                den = n + ctx.sqrt(ctx.from_int((n + 1) ** 7))
                out.append(num / den)
        return out[: m + 1]

    return AlternatingSeries(
        name="example7",
        terms_fn=terms_fn,
        rational_ok=False,
        x=Fraction(1), v=mp.e - 3.5, r=2,
        limit_fn=_mp_limit(
            "example7",
            lambda: mp.nsum(
                lambda n: (-1) ** n * n ** mp.e / (n + (n + 1) ** (mp.mpf(7) / 2)),
                [0, mp.inf],
            ),
        ),
    )


def _geometric(x) -> AlternatingSeries:
    x = _as_fraction(x)
    if not 0 < x <= 1:
        raise RegistryError("geometric requires 0 < x <= 1")
    return AlternatingSeries(
        name=f"geometric(x={x})",
        terms_fn=_ratio_terms(Fraction(1), lambda n: x),
        x=x, v=Fraction(0), r=1,
        limit_fn=_exact_limit(1 / (1 + x)),
    )


def _arith_geometric(x) -> AlternatingSeries:
    x = _as_fraction(x)
    if not 0 < x <= 1:
        raise RegistryError("arith_geometric requires 0 < x <= 1")
    return AlternatingSeries(
        name=f"arith_geometric(x={x})",
        terms_fn=_ratio_terms(Fraction(1), lambda n: x * Fraction(n + 2, n + 1)),
        x=x, v=Fraction(1), r=1,
        limit_fn=_exact_limit(1 / (1 + x) ** 2),
    )


def _one_f_zero(rho, x) -> AlternatingSeries:
    # alpha_n = (rho)_n x^n / n!; the series for (1+x)^(-rho)
    rho = _as_fraction(rho)
    x = _as_fraction(x)
    if rho <= 0:
        raise RegistryError("one_f_zero requires rho > 0 for positive terms")
    if not 0 < x <= 1:
        raise RegistryError("one_f_zero requires 0 < x <= 1")

    if rho.denominator == 1:
        limit_fn = _exact_limit((1 + x) ** (-rho.numerator))
    else:
        limit_fn = _mp_limit(
            f"one_f_zero:{rho}:{x}", lambda: (1 + _mpf(x)) ** (-_mpf(rho))
        )
    return AlternatingSeries(
        name=f"one_f_zero(rho={rho},x={x})",
        terms_fn=_ratio_terms(Fraction(1), lambda n: x * (rho + n) / (n + 1)),
        x=x, v=rho - 1, r=1,
        limit_fn=limit_fn,
    )


def _hypergeometric_pfq(a, b, x) -> AlternatingSeries:
    a = _as_fraction_list(a)
    b = _as_fraction_list(b)
    x = _as_fraction(x)
    if not a:
        raise RegistryError("hypergeometric_pFq requires at least one upper parameter")
    if any(p <= 0 for p in a) or any(p <= 0 for p in b):
        raise RegistryError("hypergeometric_pFq parameters must be positive")
    if not 0 < x <= 1:
        raise RegistryError("hypergeometric_pFq requires 0 < x <= 1")

    def ratio(n):
        num = Fraction(1)
        for p in a:
            num *= p + n
        den = Fraction(n + 1)
        for q in b:
            den *= q + n
        return x * num / den

    v = sum(a) - sum(b) - 1 if len(a) == len(b) + 1 else None
    key = f"pFq:{','.join(map(str, a))}:{','.join(map(str, b))}:{x}"
    return AlternatingSeries(
        name=f"hypergeometric_pFq({','.join(map(str, a))};{','.join(map(str, b))};x={x})",
        terms_fn=_ratio_terms(Fraction(1), ratio),
        x=x, v=v, r=1,
        limit_fn=_mp_limit(
            key, lambda: mp.hyper([_mpf(p) for p in a], [_mpf(q) for q in b], -_mpf(x))
        ),
    )


_REGISTRY: dict[str, tuple[Callable, frozenset, frozenset]] = {
    # name: (factory, required params, optional params)
    "example1": (_example1, frozenset(), frozenset()),
    "example2": (_example2, frozenset(), frozenset()),
    "example3": (_example3, frozenset(), frozenset()),
    "example4": (_example4, frozenset(), frozenset({"x"})),
    "example5": (_example5, frozenset(), frozenset()),
    "example6": (_example6, frozenset(), frozenset()),
    "example7": (_example7, frozenset(), frozenset()),
    "geometric": (_geometric, frozenset({"x"}), frozenset()),
    "arith_geometric": (_arith_geometric, frozenset({"x"}), frozenset()),
    "one_f_zero": (_one_f_zero, frozenset({"rho", "x"}), frozenset()),
    "hypergeometric_pFq": (_hypergeometric_pfq, frozenset({"a", "b", "x"}), frozenset()),
}


def builtin_names() -> list[str]:
    return sorted(_REGISTRY)


def builtin(name: str, **params) -> AlternatingSeries:
    """Construct a builtin series by registry name.

    Unknown names, unknown parameters, or missing/invalid parameters raise
    RegistryError.
    """
    try:
        factory, required, optional = _REGISTRY[name]
    except KeyError:
        raise RegistryError(
            f"unknown series {name!r}; available: {', '.join(builtin_names())}"
        ) from None
    given = set(params)
    if not required <= given:
        raise RegistryError(f"{name} requires parameters: {', '.join(sorted(required - given))}")
    extra = given - required - optional
    if extra:
        raise RegistryError(f"{name} does not take parameters: {', '.join(sorted(extra))}")
    return factory(**params)


# --------------------------------------------------------------------------
# ingestion

def from_file(path) -> AlternatingSeries:
    """Read a terms file: one signed decimal per line, '#' comments.

    Signs must strictly alternate starting positive; the stored series keeps
    the magnitudes exactly (as rationals) at their printed precision.
    """
    path = Path(path)
    magnitudes: list[Fraction] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                value = Fraction(decimal.Decimal(text))
            except (decimal.InvalidOperation, ValueError):
                raise ParseError(f"not a decimal number: {text!r}", line=lineno) from None
            n = len(magnitudes)
            if value == 0:
                raise AlternationError(f"term {n} is zero", line=lineno)
            expected_positive = n % 2 == 0
            if (value > 0) != expected_positive:
                want = "positive" if expected_positive else "negative"
                raise AlternationError(f"term {n} should be {want}", line=lineno)
            magnitudes.append(abs(value))
    if not magnitudes:
        raise ParseError(f"{path}: no terms found")

    def terms_fn(ctx, m):
        if m >= len(magnitudes):
            raise TermError(len(magnitudes), f"terms file holds only {len(magnitudes)} terms")
        with ctx.guard():
            return [ctx.from_fraction(v) for v in magnitudes[: m + 1]]

    return AlternatingSeries(name=path.stem, terms_fn=terms_fn)
