"""Sequence transformations for alternating series.

Implemented methods, all producing the doubly indexed table s_k^n (k is the
transformation order, n the starting index; row 0 holds the partial sums):

* Aitken's delta-squared step, in the generic three-point form and in the
  weighted-average form special to alternating series;
* method S, the three-term weighted-average scheme with integer weights,
  computed in the t-form t_k^n = (n+2k-1)/((n+1)*beta_{n+1}) so one entry
  costs 2 divisions, 2 multiplications and 2 additions once the beta values
  are memoized;
* the general S_phi family s_k^n = (beta_{n+1} s_{k-1}^n + phi_k^n
  s_{k-1}^{n+1})/(beta_{n+1} + phi_k^n) for a caller-supplied phi family;
* Levin's and Weniger's transformations with the remainder estimate
  omega_m = a_{m+1}, in three interchangeable realizations: the explicit
  binomial sums, the p/q three-term recurrences, and the numerator-free
  direct-phi recurrence that reuses the q array only.

Degenerate denominators are recorded per entry: the table stays valid
elsewhere and reading a failed entry raises the recorded error.

Tables are built for one precision context; binary64 builds of method S and
of the Levin/Weniger p/q realization are routed through the float64 kernels
package (compiled when available, pure Python otherwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import (
    DegenerateDenominatorError,
    DegenerateDifferenceError,
    DegenerateWeightError,
    RangeError,
)
from .numeric import Binary64Context
from .series import AlternatingSeries

__all__ = [
    "MethodSpec",
    "PhiFamily",
    "TransformTable",
    "PqState",
    "aitken",
    "aitken_alternating",
    "method_s",
    "method_s_phi",
    "phi_tilde",
    "levin_weniger_pq",
    "levin_weniger_pq_state",
    "levin_weniger_direct",
    "levin_explicit",
    "levin_weniger_explicit",
    "levin_tilde",
    "weniger_tilde",
    "ratio_powers",
    "two_point_powers",
    "custom_phi",
    "transform",
]

_KINDS = ("aitken", "s", "sphi", "levin", "weniger")
_REALIZATIONS = ("explicit", "pq", "direct")


@dataclass(frozen=True)
class MethodSpec:
    """A transformation choice: kind, shift parameter b, phi family, realization."""

    kind: str
    b: Fraction = Fraction(1)
    phi: "PhiFamily | None" = None
    realization: str = "pq"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown method kind {self.kind!r}")
        if self.realization not in _REALIZATIONS:
            raise ValueError(f"unknown realization {self.realization!r}")
        b = Fraction(self.b)
        if b <= 0:
            raise ValueError("shift parameter b must be positive")
        object.__setattr__(self, "b", b)
        if self.kind == "sphi" and self.phi is None:
            raise ValueError("sphi requires a phi family")


@dataclass(frozen=True)
class PhiFamily:
    """A weight family phi_k^n, evaluated in a given precision context.

    Builtin families satisfy phi_1^n = 1 and the asymptotic condition
    phi_k^n = 1 + (2k-2)/n + O(n^-2); custom families are the caller's
    responsibility.
    """

    kind: str
    fn: Callable = field(repr=False)
    b: Fraction | None = None

    def value(self, ctx, k: int, n: int):
        return self.fn(ctx, k, n)


def phi_tilde(method: str, k: int, n: int, b=1) -> Fraction:
    """The weight function of the Levin/Weniger recurrences, exactly.

    Levin:   (n+b+1)^(k-2) (n+k+b) / (n+b)^(k-1)
    Weniger: (n+b+2k-2)/(n+b)

    Returned as an exact Fraction (b must be rational); convert with
    ctx.from_fraction before mixing with decimal values.
    """
    if method not in ("levin", "weniger"):
        raise ValueError(f"method must be 'levin' or 'weniger', got {method!r}")
    if k < 1 or n < 0:
        raise ValueError("phi_tilde requires k >= 1 and n >= 0")
    b = Fraction(b)
    if n + b <= 0:
        raise ValueError("shift parameter must satisfy n + b > 0")
    if method == "levin":
        return (n + b + 1) ** (k - 2) * (n + k + b) / (n + b) ** (k - 1)
    return Fraction(n + b + 2 * k - 2) / (n + b)


def levin_tilde(b=1) -> PhiFamily:
    b = Fraction(b)
    return PhiFamily("levin-tilde", lambda ctx, k, n: ctx.from_fraction(phi_tilde("levin", k, n, b)), b)


def weniger_tilde(b=1) -> PhiFamily:
    b = Fraction(b)
    return PhiFamily("weniger-tilde", lambda ctx, k, n: ctx.from_fraction(phi_tilde("weniger", k, n, b)), b)


def ratio_powers() -> PhiFamily:
    """phi_k^n = ((n+3)/(n+1))^(k-1)."""
    return PhiFamily("ratio-powers", lambda ctx, k, n: ctx.from_fraction(Fraction(n + 3, n + 1) ** (k - 1)))


def two_point_powers() -> PhiFamily:
    """phi_k^n = ((n+2)/(n+1))^(2k-2)."""
    return PhiFamily("two-point-powers", lambda ctx, k, n: ctx.from_fraction(Fraction(n + 2, n + 1) ** (2 * k - 2)))


def custom_phi(fn: Callable, name: str = "custom") -> PhiFamily:
    """Wrap fn(ctx, k, n) -> value as a phi family."""
    return PhiFamily(name, fn)


@dataclass
class TransformTable:
    """Triangular table of approximants s_k^n.

    rows[k][n] holds s_k^n for n + k + 1 <= budget; a failed entry is None
    and its error is recorded in failures[(k, n)].
    """

    method: MethodSpec
    series_name: str
    budget: int
    rows: list
    failures: dict

    @property
    def kmax(self) -> int:
        return len(self.rows) - 1

    def has(self, k: int, n: int) -> bool:
        return 0 <= k < len(self.rows) and 0 <= n < len(self.rows[k]) and self.rows[k][n] is not None

    def entry(self, k: int, n: int):
        if not (0 <= k < len(self.rows)) or not (0 <= n < len(self.rows[k])):
            raise RangeError(
                f"entry (k={k}, n={n}) outside the table (kmax={self.kmax}, budget={self.budget})"
            )
        value = self.rows[k][n]
        if value is None:
            raise self.failures[(k, n)]
        return value

    def row(self, k: int) -> list:
        if not 0 <= k < len(self.rows):
            raise RangeError(f"row {k} outside the table (kmax={self.kmax})")
        return self.rows[k]


@dataclass
class PqState:
    """Numerators and denominators of the Levin/Weniger recurrences.

    scales[k] is the common factor divided out of level k (1 where no
    rescaling was applied); it cancels in s = p/q, so p_rows[k][n]/q_rows[k][n]
    is the approximant regardless of scaling.
    """

    method: str
    b: Fraction
    budget: int
    p_rows: list
    q_rows: list
    scales: list


def _validate_km(K: int, M: int) -> None:
    if K < 0:
        raise ValueError("K must be nonnegative")
    if M < K + 1:
        raise ValueError(f"term budget M={M} too small; need M >= K+1 = {K + 1}")


def _psums(al: list, count: int, ctx) -> list:
    out = []
    s = ctx.from_int(0)
    for n in range(count):
        s = s + al[n] if n % 2 == 0 else s - al[n]
        out.append(s)
    return out


def _betas(al: list) -> list:
    # beta[j] = al[j+1]/al[j]; index 0 is skipped when alpha_0 = 0 (the
    # recurrences only consume beta_{n+1} and beta_{n+k} with k >= 1).
    beta = [None] * (len(al) - 1)
    for j in range(len(al) - 1):
        if j == 0 and al[0] == 0:
            continue
        beta[j] = al[j + 1] / al[j]
    return beta


def aitken(values, ctx=None):
    """One Aitken delta-squared step on a plain sequence.

    Uses the classic three-point quotient; for alternating partial sums the
    aitken_alternating form is cheaper and cancellation-free.
    """
    if len(values) < 3:
        raise ValueError("aitken needs at least 3 sequence values")
    guard = ctx.guard() if ctx is not None else _NULL_GUARD
    out = []
    with guard:
        for n in range(len(values) - 2):
            den = values[n + 2] - 2 * values[n + 1] + values[n]
            if den == 0:
                raise DegenerateDifferenceError(n)
            out.append((values[n] * values[n + 2] - values[n + 1] ** 2) / den)
    return out


class _Null:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False


_NULL_GUARD = _Null()


def aitken_alternating(series: AlternatingSeries, ctx, n: int):
    """Aitken's step as the weighted average special to alternating series:

    (alpha_{n+2} s_n + alpha_{n+1} s_{n+1}) / (alpha_{n+2} + alpha_{n+1})
    """
    al = series.terms(ctx, n + 2)
    with ctx.guard():
        s = _psums(al, n + 2, ctx)
        return (al[n + 2] * s[n] + al[n + 1] * s[n + 1]) / (al[n + 2] + al[n + 1])


# --------------------------------------------------------------------------
# method S and the general S_phi family

def method_s(series: AlternatingSeries, ctx, K: int, M: int, *, use_kernel: bool = True) -> TransformTable:
    """Method S: s_k^n = (s_{k-1}^n + t s_{k-1}^{n+1})/(1 + t) with
    t = (n+2k-1)/((n+1) beta_{n+1})."""
    _validate_km(K, M)
    spec = MethodSpec("s")
    al = series.terms(ctx, M)
    if use_kernel and isinstance(ctx, Binary64Context):
        from . import kernels

        table = kernels.method_s_table(np.asarray(al, dtype=np.float64), K)
        return _table_from_array(spec, series.name, M, K, table, DegenerateWeightError)
    with ctx.guard():
        beta = _betas(al)
        rows = [_psums(al, M, ctx)]
        failures: dict = {}
        for k in range(1, K + 1):
            prev = rows[k - 1]
            row = []
            for n in range(M - k):
                if prev[n] is None or prev[n + 1] is None:
                    failures[(k, n)] = failures[_parent_key(failures, k, n)]
                    row.append(None)
                    continue
                t = (n + 2 * k - 1) / ((n + 1) * beta[n + 1])
                den = 1 + t
                if den == 0:
                    failures[(k, n)] = DegenerateWeightError(k, n)
                    row.append(None)
                    continue
                row.append((prev[n] + t * prev[n + 1]) / den)
            rows.append(row)
    return TransformTable(spec, series.name, M, rows, failures)


def method_s_phi(series: AlternatingSeries, ctx, phi: PhiFamily, K: int, M: int) -> TransformTable:
    """The S_phi family: a convex combination weighted by beta_{n+1} and phi_k^n."""
    _validate_km(K, M)
    al = series.terms(ctx, M)
    with ctx.guard():
        beta = _betas(al)
        rows = [_psums(al, M, ctx)]
        failures: dict = {}
        for k in range(1, K + 1):
            prev = rows[k - 1]
            row = []
            for n in range(M - k):
                if prev[n] is None or prev[n + 1] is None:
                    failures[(k, n)] = failures[_parent_key(failures, k, n)]
                    row.append(None)
                    continue
                ph = phi.value(ctx, k, n)
                den = beta[n + 1] + ph
                if den == 0:
                    failures[(k, n)] = DegenerateWeightError(k, n)
                    row.append(None)
                    continue
                row.append((beta[n + 1] * prev[n] + ph * prev[n + 1]) / den)
            rows.append(row)
    return TransformTable(MethodSpec("sphi", phi=phi), series.name, M, rows, failures)


def _parent_key(failures: dict, k: int, n: int):
    if (k - 1, n) in failures:
        return (k - 1, n)
    return (k - 1, n + 1)


# --------------------------------------------------------------------------
# Levin / Weniger

def levin_weniger_pq_state(series: AlternatingSeries, ctx, method: str, K: int, M: int, b=1) -> PqState:
    """The p/q three-term recurrences, keeping every level.

    p_0^n = s_n, q_0^n = 1, then r_k^n = beta_{n+k} r_{k-1}^n +
    phi~_k^n r_{k-1}^{n+1} for r in {p, q}.  In the binary64 backend each
    completed level is divided by max_n |q_k^n| (recorded in scales) to keep
    the recurrences away from overflow; the factor cancels in p/q.
    """
    _validate_km(K, M)
    if method not in ("levin", "weniger"):
        raise ValueError(f"method must be 'levin' or 'weniger', got {method!r}")
    b = Fraction(b)
    al = series.terms(ctx, M)
    one = ctx.from_int(1)
    with ctx.guard():
        beta = _betas(al)
        p = _psums(al, M, ctx)
        q = [one] * M
        p_rows = [list(p)]
        q_rows = [list(q)]
        scales = [one]
        for k in range(1, K + 1):
            new_p = []
            new_q = []
            for n in range(M - k):
                ph = ctx.from_fraction(phi_tilde(method, k, n, b))
                bb = beta[n + k]
                new_p.append(bb * p[n] + ph * p[n + 1])
                new_q.append(bb * q[n] + ph * q[n + 1])
            scale = one
            if ctx.rescale_pq and new_q:
                peak = max(abs(v) for v in new_q)
                if peak > 0:
                    new_p = [v / peak for v in new_p]
                    new_q = [v / peak for v in new_q]
                    scale = peak
            p, q = new_p, new_q
            p_rows.append(new_p)
            q_rows.append(new_q)
            scales.append(scale)
    return PqState(method, b, M, p_rows, q_rows, scales)


def levin_weniger_pq(series: AlternatingSeries, ctx, method: str, K: int, M: int, b=1,
                     *, use_kernel: bool = True) -> TransformTable:
    """Levin/Weniger table via the p/q realization: s_k^n = p_k^n / q_k^n."""
    _validate_km(K, M)
    spec = MethodSpec(method, b=b)
    if use_kernel and isinstance(ctx, Binary64Context):
        from . import kernels

        al = series.terms(ctx, M)
        table = kernels.levin_weniger_table(
            np.asarray(al, dtype=np.float64), K, method == "weniger", float(spec.b)
        )
        return _table_from_array(spec, series.name, M, K, table, DegenerateDenominatorError)
    state = levin_weniger_pq_state(series, ctx, method, K, M, b)
    rows = []
    failures: dict = {}
    with ctx.guard():
        for k in range(K + 1):
            row = []
            for n in range(M - k):
                qv = state.q_rows[k][n]
                if qv == 0:
                    failures[(k, n)] = DegenerateDenominatorError(k, n)
                    row.append(None)
                else:
                    row.append(state.p_rows[k][n] / qv)
            rows.append(row)
    return TransformTable(spec, series.name, M, rows, failures)


def levin_weniger_direct(series: AlternatingSeries, ctx, method: str, K: int, M: int, b=1) -> TransformTable:
    """Levin/Weniger via the numerator-free recurrence.

    Runs the q recurrence only, converts phi~ into the actual weight
    phi_k^n = phi~_k^n (beta_{n+1}/beta_{n+k}) (q_{k-1}^{n+1}/q_{k-1}^n),
    and updates s_k^n as the S_phi convex combination.  The q ratio is
    scale-invariant, so per-level rescaling (float backends) is admissible.
    """
    _validate_km(K, M)
    if method not in ("levin", "weniger"):
        raise ValueError(f"method must be 'levin' or 'weniger', got {method!r}")
    spec = MethodSpec(method, b=b, realization="direct")
    al = series.terms(ctx, M)
    one = ctx.from_int(1)
    with ctx.guard():
        beta = _betas(al)
        rows = [_psums(al, M, ctx)]
        failures: dict = {}
        q = [one] * M
        for k in range(1, K + 1):
            prev = rows[k - 1]
            row = []
            new_q = []
            for n in range(M - k):
                ph_t = ctx.from_fraction(phi_tilde(method, k, n, spec.b))
                new_q.append(beta[n + k] * q[n] + ph_t * q[n + 1])
                if prev[n] is None or prev[n + 1] is None:
                    failures[(k, n)] = failures[_parent_key(failures, k, n)]
                    row.append(None)
                    continue
                if q[n] == 0:
                    failures[(k, n)] = DegenerateDenominatorError(k - 1, n)
                    row.append(None)
                    continue
                ph = ph_t * (beta[n + 1] / beta[n + k]) * (q[n + 1] / q[n])
                den = beta[n + 1] + ph
                if den == 0:
                    failures[(k, n)] = DegenerateWeightError(k, n)
                    row.append(None)
                    continue
                row.append((beta[n + 1] * prev[n] + ph * prev[n + 1]) / den)
            if ctx.rescale_pq and new_q:
                peak = max(abs(v) for v in new_q)
                if peak > 0:
                    new_q = [v / peak for v in new_q]
            q = new_q
            rows.append(row)
    return TransformTable(spec, series.name, M, rows, failures)


def _pochhammer(z: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out *= z + i
    return out


def levin_explicit(series: AlternatingSeries, ctx, method: str, k: int, n: int, b=1):
    """One entry by the explicit binomial-sum formula.

    s_k^n is the quotient of sum_j (-1)^j C(k,j) c_j s_{n+j}/omega_{n+j} over
    the same sum with s replaced by 1, where omega_m = a_{m+1} (the signed
    term) and c_j = (n+j+b)^(k-1) for Levin or the Pochhammer symbol
    (n+j+b)_{k-1} for Weniger.
    """
    if method not in ("levin", "weniger"):
        raise ValueError(f"method must be 'levin' or 'weniger', got {method!r}")
    if k < 0 or n < 0:
        raise ValueError("k and n must be nonnegative")
    b = Fraction(b)
    al = series.terms(ctx, n + k + 1)
    with ctx.guard():
        s = _psums(al, n + k + 1, ctx)
        if k == 0:
            return s[n]
        num = ctx.from_int(0)
        den = ctx.from_int(0)
        for j in range(k + 1):
            m = n + j
            omega = al[m + 1] if (m + 1) % 2 == 0 else -al[m + 1]
            if method == "levin":
                c = Fraction(n + j + b) ** (k - 1)
            else:
                c = _pochhammer(n + j + b, k - 1)
            coef = ctx.from_fraction((-1) ** j * math.comb(k, j) * c)
            num = num + coef * (s[m] / omega)
            den = den + coef / omega
        if den == 0:
            raise DegenerateDenominatorError(k, n)
        return num / den


def levin_weniger_explicit(series: AlternatingSeries, ctx, method: str, K: int, M: int, b=1) -> TransformTable:
    """Full table via the explicit formula (verification-grade, O(K^2 M^2))."""
    _validate_km(K, M)
    spec = MethodSpec(method, b=b, realization="explicit")
    rows = []
    failures: dict = {}
    for k in range(K + 1):
        row = []
        for n in range(M - k):
            try:
                row.append(levin_explicit(series, ctx, method, k, n, b))
            except DegenerateDenominatorError as exc:
                failures[(k, n)] = exc
                row.append(None)
        rows.append(row)
    return TransformTable(spec, series.name, M, rows, failures)


# --------------------------------------------------------------------------
# dispatcher

def transform(series: AlternatingSeries, ctx, spec: MethodSpec, K: int, M: int) -> TransformTable:
    """Build the table selected by a MethodSpec."""
    if spec.kind == "aitken":
        # single-step method: row 1 is the weighted-average Aitken row
        k_eff = min(K, 1)
        base = method_s(series, ctx, k_eff, M)
        return TransformTable(spec, series.name, M, base.rows, base.failures)
    if spec.kind == "s":
        return method_s(series, ctx, K, M)
    if spec.kind == "sphi":
        return method_s_phi(series, ctx, spec.phi, K, M)
    if spec.realization == "pq":
        return levin_weniger_pq(series, ctx, spec.kind, K, M, spec.b)
    if spec.realization == "direct":
        return levin_weniger_direct(series, ctx, spec.kind, K, M, spec.b)
    return levin_weniger_explicit(series, ctx, spec.kind, K, M, spec.b)


def _table_from_array(spec: MethodSpec, name: str, M: int, K: int, array, error_cls) -> TransformTable:
    rows = []
    failures: dict = {}
    for k in range(K + 1):
        row = []
        for n in range(M - k):
            value = float(array[k, n])
            if math.isfinite(value):
                row.append(value)
            else:
                failures[(k, n)] = error_cls(k, n, f"non-finite entry at (k={k}, n={n})")
                row.append(None)
        rows.append(row)
    return TransformTable(spec, name, M, rows, failures)
