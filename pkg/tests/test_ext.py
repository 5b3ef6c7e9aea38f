import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hdline.ext import INF, ext, fmt, hm, is_inf, scale

pos = st.fractions(min_value=Fraction(1, 1000), max_value=1000)


@pytest.mark.parametrize("raw, want", [
    (3, Fraction(3)), ("1/2", Fraction(1, 2)), (" 7 ", Fraction(7)),
    (Fraction(2, 6), Fraction(1, 3)), ("inf", INF), ("∞", INF), (math.inf, INF),
])
def test_ext_accepts(raw, want):
    got = ext(raw)
    assert got == want
    assert is_inf(got) == is_inf(want)


@pytest.mark.parametrize("raw", [0.5, "0.5", -1, "-1/2", True, "abc", None, float("nan")])
def test_ext_rejects(raw):
    with pytest.raises((TypeError, ValueError)):
        ext(raw)


def test_fmt():
    assert fmt(Fraction(3, 4)) == "3/4"
    assert fmt(Fraction(6)) == "6"
    assert fmt(INF) == "inf"


def test_hm_special_values():
    assert hm(Fraction(2), Fraction(2)) == 1
    assert hm(Fraction(3), INF) == 3
    assert hm(INF, Fraction(3)) == 3
    assert is_inf(hm(INF, INF))
    assert hm(Fraction(0), Fraction(5)) == 0


def test_scale_with_infinite_link():
    assert is_inf(scale(Fraction(1, 2), INF))
    # an infinite link never limits the rate, even when idle
    assert is_inf(scale(Fraction(0), INF))
    assert scale(Fraction(1, 3), Fraction(3)) == 1


@given(pos, pos)
def test_hm_symmetric_and_below_min(x, y):
    h = hm(x, y)
    assert h == hm(y, x)
    assert h == x * y / (x + y)
    assert h < min(x, y)
    assert h >= min(x, y) / 2


@given(pos, pos, pos)
def test_hm_homogeneous(x, y, c):
    assert hm(c * x, c * y) == c * hm(x, y)


@given(pos)
def test_fmt_round_trip(x):
    assert ext(fmt(x)) == x
