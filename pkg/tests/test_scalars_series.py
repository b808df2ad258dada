from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_lift.errors import PoleError, TrackMismatch, TruncationTooSmall
from spectral_lift.scalars import ONE, ZERO, GaussQ, scalar_from_json, scalar_to_json
from spectral_lift.series import AtLeast, Series, series_div, series_from_json, series_to_json

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gauss = st.builds(GaussQ, small, small)


def series_of(trunc):
    return st.lists(gauss, min_size=0, max_size=trunc).map(lambda cs: Series(cs, trunc, exact=True))


@settings(max_examples=60, deadline=None)
@given(series_of(5), series_of(5), series_of(5))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@settings(max_examples=60, deadline=None)
@given(series_of(6), series_of(6))
def test_division_inverts_multiplication(q, d):
    if d.order() is not None and isinstance(d.order(), AtLeast):
        return
    p = d.order()
    if p >= 6:
        return
    back = series_div(d * q, d)
    assert back.trunc == 6 - p
    assert back.agrees(q)


@settings(max_examples=60, deadline=None)
@given(series_of(7), series_of(7))
def test_order_is_additive(s, t):
    a, b = s.order(), t.order()
    if isinstance(a, AtLeast) or isinstance(b, AtLeast) or a + b >= 7:
        return
    assert (s * t).order() == a + b


def test_gauss_arithmetic():
    x = GaussQ(Fraction(1, 2), 1)
    assert x * x == GaussQ(Fraction(-3, 4), 1)
    assert (x / x) == ONE
    assert scalar_from_json(scalar_to_json(x)) == x
    assert scalar_from_json("1/3") == GaussQ(Fraction(1, 3))


def test_pessimistic_truncation():
    z = Series([ZERO, ONE], 5, exact=True)
    q = series_div(z * z + z * z * z, z * z)
    assert q.trunc == 3
    assert q.known()[:2] == [ONE, ONE]
    with pytest.raises(PoleError):
        series_div(z, z * z)


def test_order_sentinel():
    s = Series([], 4, exact=True)
    assert isinstance(s.order(), AtLeast) and s.order().bound == 4


def test_tracks_do_not_mix():
    a = Series([ONE], 3, exact=True)
    b = Series([1 + 0j], 3, exact=False)
    with pytest.raises(TrackMismatch):
        a + b


def test_series_json_round_trip():
    s = Series([GaussQ(1), GaussQ(0, Fraction(2, 3))], 4, GaussQ(Fraction(1, 2)), exact=True)
    assert series_from_json(series_to_json(s)) == s


def test_cannot_raise_truncation():
    with pytest.raises(TruncationTooSmall):
        Series([ONE], 3, exact=True).truncate(5)
