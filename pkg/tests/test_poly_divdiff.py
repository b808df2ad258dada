import random
from fractions import Fraction

import pytest

from spectral_lift.divdiff import (
    divdiff,
    divdiff_horner,
    divdiff_monomial_oracle,
    newton_expand,
    synthetic_quotient,
)
from spectral_lift.errors import DuplicateNode
from spectral_lift.poly import JetConstraint, Poly, hermite_interpolate, poly_gcd, poly_roots
from spectral_lift.scalars import ONE, ZERO, GaussQ
from spectral_lift.selftest import random_monic, random_points, random_series
from spectral_lift.series import Series


def q(x):
    return GaussQ(Fraction(x))


def test_small_divided_differences():
    P = Poly([ZERO, ZERO, ONE])
    assert divdiff(P, [q(2), q(3)]) == q(5)
    assert divdiff(P, [q(1), q(1), q(1)]) == ONE


def test_monomial_oracle_on_series_points():
    z = Series([ZERO, ONE], 6, exact=True)
    got = divdiff(Poly([ZERO, ZERO, ZERO, ONE]), [z, z * 2])
    assert got.agrees(z * z * 7)
    assert divdiff_monomial_oracle(3, 1, [z, z * 2]).agrees(z * z * 7)


def test_horner_agrees_with_recursion(rng):
    for _ in range(50):
        P = random_monic(rng, 5, 6)
        pts = random_points(rng, rng.randint(1, 4), 5, near=0.0)
        a, b = divdiff(P, pts), divdiff_horner(P, pts)
        a = a if isinstance(a, Series) else pts[0].like([a])
        assert a.agrees(b)


def test_newton_expand_reproduces(rng):
    z = Series([ZERO, ONE], 6, exact=True)
    P = Poly([z * z, -z, Series([ONE], 6, exact=True)])
    assert newton_expand(P, [z.like([]), z]).agrees(P)
    for _ in range(50):
        P = random_monic(rng, 4)
        pts = random_points(rng, rng.randint(1, P.degree + 1), 4)
        assert newton_expand(P, pts).agrees(P)


def test_synthetic_quotient():
    P = Poly([q(-6), q(11), q(-6), ONE])  # (t-1)(t-2)(t-3)
    quot, val = synthetic_quotient(P, q(1))
    assert val == ZERO
    assert quot == Poly([q(6), q(-5), ONE])


def test_hermite_reproduces_constraints(rng):
    cons = [JetConstraint(q(0), "f", 0, q(1)), JetConstraint(q(0), "f", 1, q(2)),
            JetConstraint(q(1), "f", 0, q(-1)), JetConstraint(GaussQ(0, 1), "f", 0, q(3))]
    H = hermite_interpolate(cons)
    assert H.degree <= 3
    assert H(q(0)) == q(1) and H.derivative()(q(0)) == q(2)
    assert H(q(1)) == q(-1) and H(GaussQ(0, 1)) == q(3)
    with pytest.raises(DuplicateNode):
        hermite_interpolate(cons + [JetConstraint(q(1), "f", 0, q(0))])


def test_roots_and_gcd():
    P = Poly([q(2), q(-3), ONE])
    roots, res = poly_roots(P)
    assert sorted(r.real for r in roots) == pytest.approx([1.0, 2.0])
    assert res < 1e-9
    g = poly_gcd(P, Poly([q(-1), ONE]))
    assert g.degree == 1 and g(q(1)) == ZERO


def test_random_series_helper():
    s = random_series(random.Random(0), 4, lowest=2)
    o = s.order()
    assert o >= 2 if isinstance(o, int) else o.bound >= 2
