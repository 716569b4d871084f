import math
from fractions import Fraction

import pytest

from accelseries.diagnostics import (
    d_table,
    delta_s1_identity,
    digits_row,
    lemma2_residual,
    theorem1_scaling,
    theorem2_ratio,
)
from accelseries.errors import PrecisionError, RangeError
from accelseries.numeric import Binary64Context, DecimalContext, RationalContext
from accelseries.series import builtin
from accelseries.transforms import MethodSpec, method_s, weniger_tilde

RC = RationalContext()
B64 = Binary64Context()

SPECS = (
    MethodSpec("s"),
    MethodSpec("levin"),
    MethodSpec("weniger"),
    MethodSpec("sphi", phi=weniger_tilde()),
)


def test_d_row_zero_is_identically_one():
    series = builtin("example3")
    for spec in SPECS:
        dt = d_table(series, RC, spec, 2, 5)
        for n in range(6):
            assert dt.d(0, n) == 1


def test_effective_phi_is_one_at_level_one():
    series = builtin("example1")
    for spec in SPECS:
        dt = d_table(series, RC, spec, 2, 6)
        for n in range(7):
            assert dt.phi(1, n) == 1


def test_d_closed_forms_on_the_log2_series():
    series = builtin("example3")
    s = d_table(series, RC, MethodSpec("s"), 2, 6)
    levin = d_table(series, RC, MethodSpec("levin"), 2, 6)
    weniger = d_table(series, RC, MethodSpec("weniger"), 2, 6)
    assert s.d(1, 0) == Fraction(-2, 105)
    assert s.d(2, 0) == Fraction(-8, 3465)
    for n in range(7):
        d1 = -Fraction(n + 2, (n + 3) * (2 * n + 5) * (2 * n + 7))
        assert s.d(1, n) == d1
        assert levin.d(1, n) == d1
        assert weniger.d(1, n) == d1
        d2 = -Fraction(n + 2, (n + 3) * (2 * n**2 + 14 * n + 25) * (2 * n**2 + 10 * n + 13))
        assert levin.d(2, n) == d2
        assert weniger.d(2, n) == d2
        d2s = -Fraction(
            (n + 2) * (10 * n**3 + 91 * n**2 + 273 * n + 264),
            (2 * n + 9)
            * (2 * n**2 + 13 * n + 22)
            * (2 * n + 5)
            * (2 * n**2 + 9 * n + 11)
            * (2 * n + 7)
            * (n + 3),
        )
        assert s.d(2, n) == d2s


def test_b_weights_sit_between_zero_and_one():
    series = builtin("example3")
    dt = d_table(series, RC, MethodSpec("s"), 3, 20)
    assert dt.xi == Fraction(1, 2)
    for k in range(1, 4):
        for n in range(21):
            assert 0 < dt.b(k, n) < 1
    # B_1^n approaches xi as n grows
    assert abs(dt.b(1, 20) - dt.xi) < Fraction(1, 50)


def test_diagnostic_table_range_checks():
    dt = d_table(builtin("example3"), RC, MethodSpec("s"), 2, 4)
    with pytest.raises(RangeError):
        dt.d(3, 0)
    with pytest.raises(RangeError):
        dt.d(0, 5)
    with pytest.raises(RangeError):
        dt.b(0, 0)
    with pytest.raises(RangeError):
        dt.phi(0, 2)


def test_three_term_identity_residual_is_exactly_zero():
    for name in ("example3", "arith_geometric"):
        series = builtin(name, x=1) if name == "arith_geometric" else builtin(name)
        for spec in SPECS:
            for k in (1, 2):
                for n in (0, 3):
                    assert lemma2_residual(series, RC, spec, k, n) == 0


def test_first_order_difference_identity_residual_is_exactly_zero():
    for name in ("example1", "example3"):
        series = builtin(name)
        for n in range(6):
            assert delta_s1_identity(series, RC, n) == 0


def test_ratio_of_neighboring_d_tracks_phi():
    series = builtin("example3")
    for spec in SPECS[:3]:
        ratio, phi = theorem2_ratio(series, RC, spec, 1, 10)
        assert abs(ratio / phi - 1) < Fraction(4, 100)


def test_scaled_d_converges_to_its_constant():
    series = builtin("example3")
    ctx = DecimalContext(30)
    out = theorem1_scaling(series, ctx, MethodSpec("s"), 1, [100])
    assert abs(out[100] + ctx.parse("0.25")) < ctx.parse("0.02")


def test_noise_floor_guard_fires_in_binary64():
    series = builtin("example3")
    with pytest.raises(PrecisionError):
        theorem1_scaling(series, B64, MethodSpec("s"), 2, [1000])


def test_digit_counts_cap_at_backend_capacity():
    series = builtin("geometric", x=1)
    table = method_s(series, B64, 1, 4)
    row = digits_row(table, [0, 1], series.known_limit(B64), B64)
    assert table.entry(1, 0) == 0.5
    assert row.digits[1] == 15.0
    assert not row.absolute
    exact_table = method_s(series, RC, 1, 4)
    exact_row = digits_row(exact_table, [1], series.known_limit(RC), RC)
    assert exact_row.digits == [math.inf]


def test_zero_reference_switches_to_absolute_metric():
    series = builtin("example3")
    table = method_s(series, B64, 1, 4)
    row = digits_row(table, [1], 0.0, B64)
    assert row.absolute
    assert abs(row.digits[0] + math.log10(0.7)) < 1e-9
