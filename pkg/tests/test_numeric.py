import decimal
import math
from decimal import Decimal
from fractions import Fraction

import pytest

from accelseries.errors import ExactnessError, ParseError, ReferenceZeroError
from accelseries.numeric import (
    Binary64Context,
    DecimalContext,
    RationalContext,
    context,
    context_for_digits,
    parse_decimal,
    rel_error,
)


def test_context_factory():
    assert isinstance(context("binary64"), Binary64Context)
    assert isinstance(context("rational"), RationalContext)
    ctx = context("decimal")
    assert ctx.digits10 == 19
    assert context("decimal", 34).digits10 == 34
    with pytest.raises(ValueError):
        context("binary64", 20)
    with pytest.raises(ValueError):
        context("rational", 19)
    with pytest.raises(ValueError):
        context("quad")


def test_context_for_digits():
    assert context_for_digits(15).name == "binary64"
    assert context_for_digits(19).name == "decimal19"
    assert context_for_digits(30).digits10 == 30
    for bad in (14, 16, 17, 18, 0, -3):
        with pytest.raises(ValueError):
            context_for_digits(bad)


def test_parse_accepts_decimal_literals():
    cases = {
        "0.5": 0.5,
        "-3": -3.0,
        "+1.5e-3": 0.0015,
        ".5": 0.5,
        "3.": 3.0,
        "2e5": 200000.0,
    }
    for ctx in (Binary64Context(), DecimalContext(19)):
        for text, value in cases.items():
            got = parse_decimal(text, ctx)
            assert float(got) == value
    assert parse_decimal("0.1", RationalContext()) == Fraction(1, 10)


def test_parse_rejects_garbage():
    for text in ("", "abc", "1e", "--3", "1.2.3", "nan", "inf", "0x10", "1/3", "5 5"):
        for ctx in (Binary64Context(), DecimalContext(19), RationalContext()):
            with pytest.raises(ParseError):
                parse_decimal(text, ctx)


def test_parse_rejects_overflow_in_binary64():
    with pytest.raises(ParseError):
        parse_decimal("1e999", Binary64Context())


def test_from_fraction_rounding():
    ctx = Binary64Context()
    assert ctx.from_fraction(Fraction(1, 3)) == 1.0 / 3.0
    # correctly rounded even when numerator/denominator exceed 2^53
    f = Fraction(10**40 + 1, 10**40)
    assert ctx.from_fraction(f) == float(f)

    d19 = DecimalContext(19)
    third = d19.from_fraction(Fraction(1, 3))
    assert str(third) == "0.3333333333333333333"

    assert RationalContext().from_fraction(Fraction(2, 7)) == Fraction(2, 7)


def test_decimal_guard_precision_isolated():
    ctx = DecimalContext(25)
    before = decimal.getcontext().prec
    with ctx.guard():
        assert decimal.getcontext().prec == 25
        v = Decimal(1) / Decimal(7)
    assert decimal.getcontext().prec == before
    assert len(v.as_tuple().digits) == 25


def test_rational_refuses_irrational_ops():
    ctx = RationalContext()
    with pytest.raises(ExactnessError):
        ctx.sqrt(Fraction(2))
    with pytest.raises(ExactnessError):
        ctx.nth_root(Fraction(2), 3)
    with pytest.raises(ExactnessError):
        ctx.exp1()


def test_rational_log10_handles_huge_fractions():
    ctx = RationalContext()
    tiny = Fraction(1, 10**400)
    assert abs(ctx.log10(tiny) + 400) < 1e-9
    assert abs(ctx.log10(Fraction(1000)) - 3) < 1e-12


def test_rel_error_basic():
    ctx = DecimalContext(19)
    ref = parse_decimal("0.6931471805599453094", ctx)
    approx = parse_decimal("0.7", ctx)
    rel = rel_error(approx, ref, ctx)
    assert abs(float(rel) - 0.0098865286) < 1e-8

    assert rel_error(0.5, 0.5, Binary64Context()) == 0.0
    exact = rel_error(Fraction(3, 4), Fraction(1, 2), RationalContext())
    assert exact == Fraction(1, 2)


def test_rel_error_zero_reference():
    for ctx in (Binary64Context(), DecimalContext(19), RationalContext()):
        with pytest.raises(ReferenceZeroError):
            rel_error(ctx.from_int(1), ctx.from_int(0), ctx)


def test_exp1_and_roots():
    b = Binary64Context()
    assert b.exp1() == math.e
    assert b.nth_root(8.0, 3) == pytest.approx(2.0)
    d = DecimalContext(30)
    e = d.exp1()
    assert str(e).startswith("2.7182818284590452353602874713")
    with d.guard():
        assert abs(d.nth_root(Decimal(8), 3) - 2) < Decimal("1e-28")
        assert abs(d.sqrt(Decimal(2)) * d.sqrt(Decimal(2)) - 2) < Decimal("1e-28")


def test_format_roundtrip():
    b = Binary64Context()
    assert float(b.format(1.0 / 3.0)) == 1.0 / 3.0
    r = RationalContext()
    assert Fraction(r.format(Fraction(22, 7))) == Fraction(22, 7)
