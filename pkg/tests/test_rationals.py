from fractions import Fraction

import pytest

from matroid_interdiction.rationals import (
    NEG_INF,
    POS_INF,
    ExtendedRational,
    ParamInterval,
    extended,
    format_rational,
    interior_point,
    rational,
)


def test_rational_parsing_accepts_int_and_pq():
    assert rational(3) == Fraction(3)
    assert rational("3/2") == Fraction(3, 2)
    assert rational("-1") == Fraction(-1)
    assert rational(" 7/14 ") == Fraction(1, 2)


@pytest.mark.parametrize("bad", ["1.5", "inf", "three", "1/2/3", ""])
def test_rational_parsing_rejects_non_exact(bad):
    with pytest.raises(ValueError):
        rational(bad)


def test_rational_parsing_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        rational(1.5)
    with pytest.raises(TypeError):
        rational(True)


def test_format_omits_unit_denominator():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"


def test_extended_total_order():
    vals = [NEG_INF, ExtendedRational.finite(-100), ExtendedRational.finite(0),
            ExtendedRational.finite("5/2"), POS_INF]
    for i, a in enumerate(vals):
        for j, b in enumerate(vals):
            assert (a < b) == (i < j)
            assert (a == b) == (i == j)


def test_extended_parse_and_str():
    assert extended("inf") is POS_INF or extended("inf") == POS_INF
    assert str(extended("-inf")) == "-inf"
    assert str(extended("3/2")) == "3/2"
    with pytest.raises(ValueError):
        NEG_INF.value


def test_interval_membership_and_properness():
    iv = ParamInterval.closed(0, 2)
    assert iv.contains(Fraction(0)) and iv.contains(Fraction(2))
    assert not iv.strictly_inside(Fraction(2))
    assert iv.strictly_inside(Fraction(1))
    assert iv.is_bounded and iv.is_proper
    with pytest.raises(ValueError):
        ParamInterval.closed(2, 0)
    point = ParamInterval.closed(1, 1)
    assert not point.is_proper


def test_interior_point_rules():
    assert interior_point(extended(0), extended(2)) == Fraction(1)
    assert interior_point(NEG_INF, extended(5)) == Fraction(4)
    assert interior_point(extended(5), POS_INF) == Fraction(6)
    assert interior_point(NEG_INF, POS_INF) == Fraction(0)
    with pytest.raises(ValueError):
        interior_point(extended(1), extended(1))


def test_unbounded_interval_str():
    iv = ParamInterval.closed("-inf", 2)
    assert str(iv) == "(-inf, 2]"
    assert not iv.is_bounded
    assert iv.contains(Fraction(-10**9))
