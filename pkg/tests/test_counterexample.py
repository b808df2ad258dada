import random
from fractions import Fraction

import pytest

from spectral_lift.counterexample import (
    b_lambda_k,
    block_spec,
    contradiction_report,
    counterexample_map,
    direct_sum,
    epsilon_reparametrize,
)
from spectral_lift.errors import BadParameters
from spectral_lift.poly import Poly
from spectral_lift.scalars import ONE, ZERO, GaussQ
from spectral_lift.series import Series
from spectral_lift.spectral import char_poly

HALF = GaussQ(Fraction(1, 2))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_block_char_poly(k):
    z = Series([ZERO, ONE], 8, exact=True)
    lam = HALF
    P = char_poly(b_lambda_k(lam, k, 8))
    # (t - lam)^k - z^(k-1)
    base = Poly([z.like([-lam]), z.like([ONE])])
    acc = Poly([z.like([ONE])])
    for _ in range(k):
        acc = acc * base
    acc = acc - Poly([z ** (k - 1)])
    assert P.agrees(acc)


def test_block_structure_at_zero():
    spec = block_spec(ZERO, 5)
    assert spec.eigenvalues[0].blocks == (1, 1, 1, 2)


def test_direct_sum_multiplicative():
    B1, B2 = b_lambda_k(ZERO, 3, 6), b_lambda_k(HALF, 4, 6)
    assert char_poly(direct_sum(B1, B2)) == char_poly(B1) * char_poly(B2)


def test_report_three_three():
    r = contradiction_report(3, 3)
    assert (r.achieved_order, r.required_order, r.violated) == (2, 3, True)
    js = r.to_json()
    assert js["violated"] and js["stable"] and js["charpoly_multiplicative"]
    assert "violated" in r.table()


@pytest.mark.parametrize("k,l", [(2, 3), (3, 2)])
def test_bad_parameters(k, l):
    with pytest.raises(BadParameters):
        contradiction_report(k, l)


def test_equal_eigenvalues_rejected():
    with pytest.raises(BadParameters):
        contradiction_report(3, 3, HALF, HALF)


def test_orders_do_not_depend_on_phi11():
    r = contradiction_report(4, 3, trials=30, rng=random.Random(9))
    assert set(r.observed_orders) == {3}


def test_epsilon_reparametrize_enters_the_domain():
    phi = counterexample_map(3, 3)
    _, loose = epsilon_reparametrize(phi, ONE)
    assert any(m == "outside" for _, m in loose)
    small, tight = epsilon_reparametrize(phi, GaussQ(Fraction(1, 10)))
    assert all(m == "inside" for _, m in tight)
    assert small[0].order() == phi[0].order()
    with pytest.raises(BadParameters):
        epsilon_reparametrize(phi, ZERO)
