"""Convergence diagnostics for transformation tables.

The central quantity is the normalized forward difference

    D_k^n = (-1)^(n+k+1) (s_k^(n+1) - s_k^n) / alpha_(n+1)

which needs no knowledge of the limit (D_0^n = 1 identically) and is exact
in rational arithmetic.  Alongside it the table carries the convex weights
B_k^n = beta_(n+1) / (beta_(n+1) + phi_k^n) and the effective weight family
phi_k^n of the method (for Levin/Weniger recovered from the denominator
recurrence as phi~_k^n (beta_(n+1)/beta_(n+k)) (q_(k-1)^(n+1)/q_(k-1)^n)).

Checks provided on top:

* theorem1_scaling: n^(2k) D_k^n, which approaches a constant for series
  with a power-times-Poincare term asymptotic;
* theorem2_ratio: D_k^n / D_k^(n+1) against its predicted value phi_(k+1)^n;
* lemma2_residual: the three-term identity
  D_k^n = beta_(n+1) (1 - B_k^(n+1)) D_(k-1)^(n+1) - B_k^n D_(k-1)^n,
  exactly zero in rational arithmetic;
* delta_s1_identity: (s_1^(n+1) - s_1^n)/alpha_(n+1) equals
  (-1)^n beta_(n+1) [1/(1+beta_(n+2)) - 1/(1+beta_(n+1))];
* digits_row: correct decimal digits -log10 |s~/s - 1| of a table column,
  capped at the backend's digit capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateDiagnosticError,
    PrecisionError,
    RangeError,
)
from .numeric import rel_error
from .series import AlternatingSeries
from .transforms import MethodSpec, levin_weniger_pq_state, method_s, transform

__all__ = [
    "DiagnosticTable",
    "AccuracyRow",
    "d_table",
    "theorem1_scaling",
    "theorem2_ratio",
    "lemma2_residual",
    "delta_s1_identity",
    "digits_row",
]


@dataclass
class DiagnosticTable:
    """D, B and effective-phi values for one method on one series.

    d_rows[k][n] holds D_k^n for 0 <= k <= kmax, 0 <= n <= nmax.
    b_rows[k][n] and phi_rows[k][n] hold B_k^n and phi_k^n for k >= 1
    (row 0 is an empty placeholder).  Failed entries are None with the
    error recorded in d_failures / b_failures.
    """

    method: MethodSpec
    series_name: str
    kmax: int
    nmax: int
    d_rows: list
    b_rows: list
    phi_rows: list
    d_failures: dict
    b_failures: dict
    xi: Fraction | None

    def d(self, k: int, n: int):
        self._check(k, n)
        value = self.d_rows[k][n]
        if value is None:
            raise self.d_failures[(k, n)]
        return value

    def b(self, k: int, n: int):
        self._check(k, n)
        if k == 0:
            raise RangeError("B_k^n is defined for k >= 1")
        value = self.b_rows[k][n]
        if value is None:
            raise self.b_failures[(k, n)]
        return value

    def phi(self, k: int, n: int):
        self._check(k, n)
        if k == 0:
            raise RangeError("phi_k^n is defined for k >= 1")
        value = self.phi_rows[k][n]
        if value is None:
            raise self.b_failures[(k, n)]
        return value

    def _check(self, k: int, n: int) -> None:
        if not (0 <= k <= self.kmax and 0 <= n <= self.nmax):
            raise RangeError(
                f"diagnostic entry (k={k}, n={n}) outside kmax={self.kmax}, nmax={self.nmax}"
            )


@dataclass
class AccuracyRow:
    """Correct-digit counts for one table column against a reference value.

    absolute is True when the reference was zero and the counts fall back to
    -log10 |s~ - s| instead of the relative metric.
    """

    ks: list
    digits: list
    rel_errors: list
    absolute: bool = False


def _effective_phis(series: AlternatingSeries, ctx, spec: MethodSpec, K: int, M: int, beta):
    """phi_rows[k][n] for k = 1..K over the widths needed by a D table."""
    phi_rows: list = [[]]
    failures: dict = {}
    if spec.kind in ("levin", "weniger"):
        state = levin_weniger_pq_state(series, ctx, spec.kind, max(K - 1, 0), M, spec.b)
    else:
        state = None
    with ctx.guard():
        for k in range(1, K + 1):
            row = []
            for n in range(M - k - 1):
                if spec.kind in ("s", "aitken"):
                    row.append(ctx.from_fraction(Fraction(n + 2 * k - 1, n + 1)))
                elif spec.kind == "sphi":
                    row.append(spec.phi.value(ctx, k, n))
                else:
                    from .transforms import phi_tilde

                    qn = state.q_rows[k - 1][n]
                    qn1 = state.q_rows[k - 1][n + 1]
                    if qn == 0:
                        failures[(k, n)] = DegenerateDiagnosticError(
                            f"denominator q at (k={k - 1}, n={n}) vanished; phi_{k}^{n} undefined"
                        )
                        row.append(None)
                        continue
                    ph_t = ctx.from_fraction(phi_tilde(spec.kind, k, n, spec.b))
                    row.append(ph_t * (beta[n + 1] / beta[n + k]) * (qn1 / qn))
            phi_rows.append(row)
    return phi_rows, failures


def d_table(series: AlternatingSeries, ctx, spec: MethodSpec, K: int, N: int) -> DiagnosticTable:
    """Build D_k^n, B_k^n and phi_k^n for 0 <= k <= K, 0 <= n <= N."""
    if K < 0 or N < 0:
        raise ValueError("K and N must be nonnegative")
    k_top = min(K, 1) if spec.kind == "aitken" else K
    M = N + k_top + 2
    table = transform(series, ctx, spec, k_top, M)
    al = series.terms(ctx, M)
    d_rows = []
    b_rows: list = [[]]
    d_failures: dict = {}
    with ctx.guard():
        beta = [None] + [al[j + 1] / al[j] for j in range(1, M - 1)]
        if al[0] != 0:
            beta[0] = al[1] / al[0]
    phi_rows, b_failures = _effective_phis(series, ctx, spec, k_top, M, beta)
    with ctx.guard():
        for k in range(k_top + 1):
            row = []
            for n in range(N + 1):
                try:
                    left = table.entry(k, n)
                    right = table.entry(k, n + 1)
                except Exception as exc:  # recorded per-entry failure
                    d_failures[(k, n)] = exc
                    row.append(None)
                    continue
                sign = 1 if (n + k + 1) % 2 == 0 else -1
                row.append(sign * (right - left) / al[n + 1])
            d_rows.append(row)
        for k in range(1, k_top + 1):
            row = []
            for n in range(N + 1):
                ph = phi_rows[k][n]
                if ph is None:
                    row.append(None)
                    continue
                den = beta[n + 1] + ph
                if den == 0:
                    b_failures[(k, n)] = DegenerateDiagnosticError(
                        f"beta + phi vanished at (k={k}, n={n})"
                    )
                    row.append(None)
                    continue
                row.append(beta[n + 1] / den)
            b_rows.append(row)
    phi_rows = [r[: N + 1] for r in phi_rows]
    xi = None
    if series.x is not None:
        xi = Fraction(series.x) / (Fraction(series.x) + 1)
    return DiagnosticTable(
        spec, series.name, k_top, N, d_rows, b_rows, phi_rows, d_failures, b_failures, xi
    )


def theorem1_scaling(series: AlternatingSeries, ctx, spec: MethodSpec, k: int, ns) -> dict:
    """n^(2k) D_k^n for each n in ns.

    Raises PrecisionError when the forward difference underneath D sits at
    the backend's noise floor (within a factor 100 of one unit in the last
    digit), since the scaled value would then be rounding noise.
    """
    ns = list(ns)
    if not ns or min(ns) < 0:
        raise ValueError("ns must be a nonempty list of nonnegative indices")
    N = max(ns)
    M = N + k + 2
    table = transform(series, ctx, spec, k, M)
    al = series.terms(ctx, M)
    out = {}
    with ctx.guard():
        floor = None
        if ctx.digits10 is not None:
            floor = 100 * ctx.from_fraction(Fraction(1, 10**ctx.digits10))
        for n in ns:
            left = table.entry(k, n)
            right = table.entry(k, n + 1)
            diff = right - left
            if floor is not None:
                scale = max(abs(left), abs(right))
                if abs(diff) <= floor * scale:
                    raise PrecisionError(
                        f"difference s_{k}^{n + 1} - s_{k}^{n} is at the noise floor of "
                        f"{ctx.name}; rerun with more digits"
                    )
            sign = 1 if (n + k + 1) % 2 == 0 else -1
            d = sign * diff / al[n + 1]
            out[n] = n ** (2 * k) * d
    return out


def theorem2_ratio(series: AlternatingSeries, ctx, spec: MethodSpec, k: int, n: int):
    """(D_k^n / D_k^(n+1), phi_(k+1)^n): the ratio and its predicted value."""
    dt = d_table(series, ctx, spec, k + 1, n + 1)
    num = dt.d(k, n)
    den = dt.d(k, n + 1)
    if den == 0:
        raise DegenerateDiagnosticError(f"D_{k}^{n + 1} = 0; ratio undefined")
    with ctx.guard():
        ratio = num / den
    return ratio, dt.phi(k + 1, n)


def lemma2_residual(series: AlternatingSeries, ctx, spec: MethodSpec, k: int, n: int):
    """Residual of the three-term identity linking D at levels k and k-1.

    Exactly zero (rational backend) for every method of the weighted-average
    family; at most rounding noise in floating backends.
    """
    if k < 1:
        raise ValueError("the identity needs k >= 1")
    dt = d_table(series, ctx, spec, k, n + 1)
    al = series.terms(ctx, n + 2)
    with ctx.guard():
        beta_n1 = al[n + 2] / al[n + 1]
        rhs = beta_n1 * (1 - dt.b(k, n + 1)) * dt.d(k - 1, n + 1) - dt.b(k, n) * dt.d(k - 1, n)
        return dt.d(k, n) - rhs


def delta_s1_identity(series: AlternatingSeries, ctx, n: int):
    """Residual of the first-order difference identity

    (s_1^(n+1) - s_1^n)/alpha_(n+1)
        = (-1)^n beta_(n+1) [1/(1+beta_(n+2)) - 1/(1+beta_(n+1))].
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    M = n + 3
    table = method_s(series, ctx, 1, M, use_kernel=False)
    al = series.terms(ctx, M)
    with ctx.guard():
        lhs = (table.entry(1, n + 1) - table.entry(1, n)) / al[n + 1]
        beta_n1 = al[n + 2] / al[n + 1]
        beta_n2 = al[n + 3] / al[n + 2]
        sign = 1 if n % 2 == 0 else -1
        rhs = sign * beta_n1 * (1 / (1 + beta_n2) - 1 / (1 + beta_n1))
        return lhs - rhs


def digits_row(table, ks, reference, ctx) -> AccuracyRow:
    """Correct digits of column n = 0: -log10 |s_k^0 / s - 1| per k in ks.

    Counts are capped at the backend's digit capacity; a failed table entry
    yields None.  A zero reference switches to the absolute metric
    -log10 |s_k^0 - s| and flags the row.
    """
    ks = list(ks)
    digits = []
    rels = []
    absolute = reference == 0
    cap = float(ctx.digits10) if ctx.digits10 is not None else None
    for k in ks:
        try:
            value = table.entry(k, 0)
        except Exception:
            digits.append(None)
            rels.append(None)
            continue
        if absolute:
            with ctx.guard():
                rel = abs(value - reference)
        else:
            rel = rel_error(value, reference, ctx)
        rels.append(rel)
        if rel == 0:
            digits.append(cap if cap is not None else math.inf)
            continue
        with ctx.guard():
            count = float(-ctx.log10(rel))
        if cap is not None:
            count = min(count, cap)
        digits.append(count)
    return AccuracyRow(ks, digits, rels, absolute)
