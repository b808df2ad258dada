from fractions import Fraction

import pytest

from spectral_lift.conditions import (
    check_conditions,
    check_conditions_multi,
    necessity_fuzz,
    product_orders_check,
    random_product_instance,
    random_psi,
    random_spec,
    required_orders,
)
from spectral_lift.errors import PreconditionViolated, TruncationTooSmall
from spectral_lift.jordan import JordanSpec
from spectral_lift.poly import Poly
from spectral_lift.scalars import ONE, ZERO, GaussQ
from spectral_lift.series import Series
from spectral_lift.spectral import SigmaVector

ZERO2 = JordanSpec.of((0, [1, 1]))


def z_series(*cs, trunc=5):
    return Series([GaussQ(Fraction(c)) for c in cs], trunc, exact=True)


def test_scalar_target_pass_and_fail():
    ok = check_conditions(SigmaVector([z_series(0, 1), z_series(0, 0, 1)]), ZERO2)
    assert ok.passed
    assert [e.required for e in ok.entries] == [2, 1]
    bad = check_conditions(SigmaVector([z_series(0, 1), z_series(0, 1)]), ZERO2)
    assert not bad.passed
    assert bad.failures()[0].k == 0 and bad.failures()[0].achieved == 1


def test_cyclic_target_is_a_value_check():
    spec = JordanSpec.of((0, [2]))
    assert set(required_orders(spec).values()) == {1}
    assert check_conditions(SigmaVector([z_series(0, 3), z_series(0, 5)]), spec).passed
    assert not check_conditions(SigmaVector([z_series(1, 3), z_series(0, 5)]), spec).passed


def test_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        check_conditions(SigmaVector([z_series(trunc=1), z_series(trunc=1)]), ZERO2)


def test_multi_node():
    phis = [Poly([ZERO, ONE]), Poly([ZERO, ZERO, GaussQ(Fraction(-1, 2)), ONE])]
    nodes = [(ZERO, ZERO2), (GaussQ(Fraction(1, 2)), JordanSpec.of(("1/2", [1]), (0, [1])))]
    assert check_conditions_multi(phis, nodes, 6).passed


def test_necessity_fuzz(rng):
    for _ in range(100):
        spec = random_spec(rng, rng.randint(1, 5))
        assert necessity_fuzz(spec, random_psi(spec, rng, spec.n + 3))


def test_report_json():
    rep = check_conditions(SigmaVector([z_series(0, 1), z_series(0, 0, 1)]), ZERO2)
    js = rep.to_json()
    assert js["pass"] is True and len(js["conditions"]) == 2


def test_product_orders(rng):
    for _ in range(100):
        assert product_orders_check(*random_product_instance(rng))
    P1 = Poly([z_series(0, 1), z_series(1)])
    with pytest.raises(PreconditionViolated):
        product_orders_check(P1, Poly([z_series(0, 1), z_series(1)]), [1])
    with pytest.raises(PreconditionViolated):
        product_orders_check(P1, Poly([z_series(1), z_series(1)]), [0])
