"""End-to-end acceptance checks.

Each test prints one PASS/FAIL line; tolerances and index ranges are fixed
and must not be loosened.
"""

import time
from fractions import Fraction

from accelseries.diagnostics import d_table, delta_s1_identity, digits_row, lemma2_residual, theorem1_scaling
from accelseries.numeric import Binary64Context, DecimalContext, RationalContext
from accelseries.series import builtin, scale_terms, shift_first_term
from accelseries.transforms import (
    MethodSpec,
    aitken_alternating,
    levin_tilde,
    levin_weniger_direct,
    levin_weniger_explicit,
    levin_weniger_pq,
    method_s,
    method_s_phi,
    ratio_powers,
    two_point_powers,
    weniger_tilde,
)

RC = RationalContext()
B64 = Binary64Context()

KS = list(range(3, 16))

# reference correct-digit counts for s_k^0, k = 3..15, rows S / L / W
REFERENCE_DIGITS = {
    "example1": {
        "s": [3.6, 5.1, 6.1, 7.0, 8.7, 9.2, 10.4, 11.6, 12.5, 14.1, 14.6, 17.1, 16.8],
        "levin": [3.9, 5.6, 6.1, 7.4, 9.1, 9.7, 11.1, 12.8, 13.4, 14.8, 16.6, 17.2, 18.7],
        "weniger": [5.1, 5.1, 6.2, 7.6, 9.2, 10.2, 10.9, 11.7, 12.7, 13.6, 14.5, 15.5, 16.4],
    },
    "example2": {
        "s": [4.0, 5.2, 7.1, 7.7, 8.9, 10.4, 11.1, 13.1, 13.4, 14.8, 15.7, 16.9, 18.0],
        "levin": [4.1, 5.4, 7.0, 8.1, 9.1, 10.4, 13.9, 12.9, 14.0, 15.8, 16.7, 17.7, 19.0],
        "weniger": [4.7, 5.9, 7.5, 10.2, 10.2, 11.2, 12.3, 13.4, 14.5, 15.5, 16.6, 17.6, 18.7],
    },
    "example3": {
        "s": [3.9, 5.3, 7.0, 7.6, 9.5, 10.0, 11.4, 12.4, 13.5, 14.7, 15.7, 17.1, 17.9],
        "levin": [4.0, 5.3, 7.0, 8.1, 9.1, 10.5, 12.3, 12.8, 14.1, 17.0, 16.6, 17.8, 18.8],
        "weniger": [4.9, 5.9, 7.2, 8.6, 10.1, 11.6, 13.1, 14.6, 16.1, 17.6, 19.0, 19.0, 19.0],
    },
    "example4": {
        "s": [4.2, 5.3, 6.6, 8.3, 9.7, 10.8, 13.2, 13.5, 15.0, 16.3, 17.4, 18.3, 18.4],
        "levin": [4.1, 5.1, 6.2, 7.5, 8.8, 10.2, 11.8, 13.9, 15.0, 16.2, 17.9, 19.0, 18.6],
        "weniger": [4.3, 6.4, 7.8, 9.4, 11.1, 12.8, 14.6, 16.4, 18.0, 19.0, 18.8, 18.8, 18.6],
    },
    "example5": {
        "s": [4.7, 7.2, 7.8, 9.9, 10.8, 12.6, 13.8, 15.4, 16.9, 18.5, 18.1, 18.1, 18.1],
        "levin": [4.4, 5.7, 7.2, 8.8, 10.5, 12.4, 14.9, 17.6, 17.6, 18.1, 18.1, 18.1, 18.1],
        "weniger": [5.5, 7.0, 8.4, 9.8, 11.1, 12.3, 13.5, 14.6, 15.8, 17.0, 19.0, 18.1, 18.1],
    },
    "example6": {
        "s": [4.4, 5.9, 7.2, 7.8, 8.6, 9.4, 10.3, 11.1, 11.9, 12.7, 13.5, 14.2, 15.0],
        "levin": [4.5, 5.8, 6.8, 7.6, 8.3, 9.1, 9.9, 10.6, 11.3, 12.1, 12.8, 13.5, 14.1],
        "weniger": [5.2, 6.3, 7.8, 8.7, 10.0, 10.6, 12.5, 12.4, 14.4, 14.2, 15.8, 16.0, 17.3],
    },
    "example7": {
        "s": [2.2, 3.0, 4.0, 5.1, 6.1, 7.2, 8.4, 9.6, 10.7, 11.9, 13.4, 14.5, 15.8],
        "levin": [2.3, 3.3, 4.6, 6.6, 6.8, 8.0, 9.7, 10.0, 10.9, 12.0, 13.0, 13.8, 14.7],
        "weniger": [3.1, 3.6, 4.4, 5.2, 6.1, 7.0, 7.9, 8.7, 9.5, 10.4, 11.2, 12.0, 12.9],
    },
}


def _report(num, label, ok, elapsed=None):
    timing = f" ({elapsed:.2f}s)" if elapsed is not None else ""
    print(f"criterion {num} ({label}): {'PASS' if ok else 'FAIL'}{timing}")


def _digit_rows(name):
    ctx = DecimalContext(19)
    series = builtin(name)
    reference = series.known_limit(ctx)
    rows = {}
    for method, table in (
        ("s", method_s(series, ctx, 15, 16)),
        ("levin", levin_weniger_pq(series, ctx, "levin", 15, 16)),
        ("weniger", levin_weniger_pq(series, ctx, "weniger", 15, 16)),
    ):
        rows[method] = digits_row(table, KS, reference, ctx).digits
    return rows


def _entry_ok(got, expected):
    if expected <= 13.0:
        return abs(got - expected) <= 0.3 + 1e-9
    return abs(got - expected) <= 1.5 + 1e-9 or got >= 19.0 - 1e-9


def _check_tables(num, label, names):
    failures = []
    worst_time = 0.0
    for name in names:
        start = time.perf_counter()
        rows = _digit_rows(name)
        worst_time = max(worst_time, time.perf_counter() - start)
        for method, expected_row in REFERENCE_DIGITS[name].items():
            for k, expected, got in zip(KS, expected_row, rows[method]):
                if not _entry_ok(got, expected):
                    failures.append(f"{name} {method} k={k}: got {got:.1f}, expected {expected}")
    ok = not failures and worst_time < 1.0
    _report(num, label, ok, worst_time)
    assert ok, failures or f"slowest example took {worst_time:.2f}s"


def test_criterion_1_closed_form_oracle():
    start = time.perf_counter()
    series = builtin("example3")
    tables = {m: d_table(series, RC, MethodSpec(m), 2, 20) for m in ("s", "levin", "weniger")}
    ok = True
    for n in range(21):
        d1 = -Fraction(n + 2, (n + 3) * (2 * n + 5) * (2 * n + 7))
        ok = ok and all(tables[m].d(1, n) == d1 for m in tables)
        d2 = -Fraction(n + 2, (n + 3) * (2 * n**2 + 14 * n + 25) * (2 * n**2 + 10 * n + 13))
        ok = ok and tables["levin"].d(2, n) == d2 and tables["weniger"].d(2, n) == d2
        d2s = -Fraction(
            (n + 2) * (10 * n**3 + 91 * n**2 + 273 * n + 264),
            (2 * n + 9)
            * (2 * n**2 + 13 * n + 22)
            * (2 * n + 5)
            * (2 * n**2 + 9 * n + 11)
            * (2 * n + 7)
            * (n + 3),
        )
        ok = ok and tables["s"].d(2, n) == d2s
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    _report(1, "closed-form oracle", ok, elapsed)
    assert ok


def test_criterion_2_divergent_closed_forms():
    series = builtin("arith_geometric", x=1)
    s = method_s(series, RC, 3, 26)
    levin = levin_weniger_pq(series, RC, "levin", 3, 26)
    weniger = levin_weniger_pq(series, RC, "weniger", 3, 26)
    ok = True
    for n in range(21):
        u = (-1) ** (n + 1)
        ok = ok and s.entry(1, n) == Fraction(1, 4) * (1 + Fraction(u, 2 * n + 5))
        ok = ok and s.entry(2, n) == Fraction(1, 4) * (
            1 - Fraction(3 * u, (2 * n + 3) * (2 * n + 5) * (2 * n + 7))
        )
        ok = ok and s.entry(3, n) == Fraction(1, 4) * (
            1
            - Fraction(
                3 * (n - 3) * u,
                (2 * n + 3)
                * (2 * n + 5)
                * (2 * n + 7)
                * (2 * n + 9)
                * (2 * n**2 + 11 * n + 13),
            )
        )
        ok = ok and levin.entry(2, n) == Fraction(1, 4) * (
            1 - Fraction(u, 2 * n**3 + 16 * n**2 + 40 * n + 31)
        )
        p5 = 4 * n**5 + 62 * n**4 + 372 * n**3 + 1084 * n**2 + 1544 * n + 867
        ok = ok and levin.entry(3, n) == Fraction(1, 4) * (1 + Fraction(3 * u, p5))
        ok = ok and weniger.entry(3, n) == Fraction(1, 4)
    _report(2, "divergent-series closed forms", ok)
    assert ok


def test_criterion_3_tables_examples_1_to_5():
    _check_tables(3, "digit tables, examples 1-5", [f"example{i}" for i in range(1, 6)])


def test_criterion_4_tables_examples_6_and_7():
    # the fourth row of the reference tables (the d~ transformation) is out of scope
    _check_tables(4, "digit tables, examples 6-7", ["example6", "example7"])


def test_criterion_5_cross_method_equalities():
    ok = True
    phis = (weniger_tilde(), levin_tilde(), ratio_powers(), two_point_powers())
    for name in ("example1", "example3"):
        series = builtin(name)
        s = method_s(series, RC, 2, 33)
        levin = levin_weniger_pq(series, RC, "levin", 2, 33)
        weniger = levin_weniger_pq(series, RC, "weniger", 2, 33)
        sphi = [method_s_phi(series, RC, phi, 1, 33) for phi in phis]
        for n in range(31):
            first = s.entry(1, n)
            ok = ok and aitken_alternating(series, RC, n) == first
            ok = ok and levin.entry(1, n) == first
            ok = ok and weniger.entry(1, n) == first
            ok = ok and all(t.entry(1, n) == first for t in sphi)
            ok = ok and levin.entry(2, n) == weniger.entry(2, n)
        fs = method_s(series, B64, 1, 33)
        fl = levin_weniger_pq(series, B64, "levin", 1, 33)
        fw = levin_weniger_pq(series, B64, "weniger", 1, 33)
        for n in range(31):
            base = fs.entry(1, n)
            for value in (fl.entry(1, n), fw.entry(1, n), aitken_alternating(series, B64, n)):
                ok = ok and abs(value - base) <= 1e-12 * abs(base)
    _report(5, "cross-method equalities", ok)
    assert ok


def test_criterion_6_realization_equivalence():
    series = builtin("example3")
    ok = True
    for method in ("levin", "weniger"):
        pq = levin_weniger_pq(series, RC, method, 6, 17)
        direct = levin_weniger_direct(series, RC, method, 6, 17)
        explicit = levin_weniger_explicit(series, RC, method, 6, 17)
        for k in range(7):
            for n in range(11):
                value = pq.entry(k, n)
                ok = ok and direct.entry(k, n) == value and explicit.entry(k, n) == value
    _report(6, "realization equivalence", ok)
    assert ok


def test_criterion_7_theorem1_scaling():
    ctx = DecimalContext(30)
    series = builtin("example3")
    ok = True
    quarter = ctx.parse("0.25")
    for method in ("s", "levin", "weniger"):
        out = theorem1_scaling(series, ctx, MethodSpec(method), 1, [100, 1000])
        for n in (100, 1000):
            ok = ok and abs(out[n] + quarter) <= ctx.from_fraction(Fraction(2, n))
    s_value = theorem1_scaling(series, ctx, MethodSpec("s"), 2, [1000])[1000]
    ok = ok and ctx.parse("-0.40") <= s_value <= ctx.parse("-0.25")
    for method in ("levin", "weniger"):
        value = theorem1_scaling(series, ctx, MethodSpec(method), 2, [1000])[1000]
        ok = ok and ctx.parse("-0.30") <= value <= ctx.parse("-0.20")
    _report(7, "asymptotic scaling of D", ok)
    assert ok


def test_criterion_8_property_suite():
    ok = True
    series_pair = (builtin("example3"), builtin("arith_geometric", x=1))
    for series in series_pair:
        base = method_s(series, RC, 3, 9)
        scaled = method_s(scale_terms(series, Fraction(3)), RC, 3, 9)
        shifted = method_s(shift_first_term(series, Fraction(1, 3)), RC, 3, 9)
        for k in range(4):
            for n in range(9 - k - 1):
                ok = ok and scaled.entry(k, n) == 3 * base.entry(k, n)
                ok = ok and shifted.entry(k, n) == base.entry(k, n) + Fraction(1, 3)
        convex = method_s(series, RC, 5, 12)
        for k in range(1, 6):
            for n in range(12 - k - 1):
                lo = min(convex.entry(k - 1, n), convex.entry(k - 1, n + 1))
                hi = max(convex.entry(k - 1, n), convex.entry(k - 1, n + 1))
                ok = ok and lo <= convex.entry(k, n) <= hi
        for spec in (MethodSpec("s"), MethodSpec("levin"), MethodSpec("weniger")):
            for k in range(1, 6):
                for n in range(11):
                    ok = ok and lemma2_residual(series, RC, spec, k, n) == 0
        for n in range(11):
            ok = ok and delta_s1_identity(series, RC, n) == 0
    _report(8, "algebraic property suite", ok)
    assert ok
