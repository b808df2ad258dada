import random
from fractions import Fraction

import pytest

from spectral_lift.conditions import random_psi
from spectral_lift.errors import ConditionsFail, UnsupportedDimension
from spectral_lift.jordan import JordanSpec, jordan_matrix
from spectral_lift.lifting import (
    LiftProblem,
    assemble,
    classify_shape,
    frame_orders,
    lift,
    lift_single,
    first_entry_order_audit,
    solve_node,
    verify_lift,
)
from spectral_lift.matrix import Matrix
from spectral_lift.poly import Poly
from spectral_lift.rational import RationalMatrix
from spectral_lift.scalars import ONE, ZERO, GaussQ
from spectral_lift.selftest import ROUND_TRIP_SHAPES, random_frame, worked_example, worked_example_ok
from spectral_lift.series import Series
from spectral_lift.spectral import SigmaVector, char_poly, pi_map, poly_from_sigma


def test_worked_example():
    res = worked_example()
    assert worked_example_ok(res)
    assert res.Phi.exact and not res.certificate.advisory


def test_shapes_classified():
    for name, items in ROUND_TRIP_SHAPES.items():
        assert classify_shape(JordanSpec.of(*items)) == name


def test_frame_orders():
    assert frame_orders((0, 1, 0)) == [3, 2, 2]
    assert frame_orders((1, 1)) == [1, 1]


@pytest.mark.parametrize("name", sorted(ROUND_TRIP_SHAPES))
def test_round_trip_per_shape(name):
    rng = random.Random(name)
    spec = JordanSpec.of(*ROUND_TRIP_SHAPES[name])
    K = 2 * spec.n + 2
    for _ in range(3):
        phi = pi_map(random_psi(spec, rng, K))
        res = lift_single(phi, spec)
        assert res.certificate.ok
        V = res.Phi.value()
        target = jordan_matrix(spec)
        assert (V == target) if V.exact else V.agrees(target.to_float(), 1e-9)
        assert first_entry_order_audit(res.nodes[0], phi)


def test_assemble_random_frames(rng):
    for _ in range(20):
        n = rng.randint(2, 4)
        phi, frame = random_frame(rng, n, 2 * n + 2)
        res = assemble(phi, frame)
        assert char_poly(res.Phi).agrees(poly_from_sigma(list(phi)))


def test_tampered_lift_is_rejected():
    res = worked_example()
    rows = [list(r) for r in res.Phi.rows]
    rows[0][0] = rows[0][0] + rows[0][0].like([ZERO, ONE])
    cert = verify_lift(Matrix(rows), _worked_phi(res), res.frame.nodes, (Matrix([[ZERO, ZERO], [ZERO, ZERO]]),))
    assert not cert.charpoly_ok and not cert.ok


def _worked_phi(res):
    K = res.Phi.sample.trunc
    return SigmaVector([Series([ZERO, ONE], K, exact=True), Series([ZERO, ZERO, ONE], K, exact=True)])


def test_conditions_fail_raises():
    spec = JordanSpec.of((0, [1, 1]))
    problem = LiftProblem([Poly([ZERO, ONE]), Poly([ZERO, ONE])], [(ZERO, spec)])
    with pytest.raises(ConditionsFail) as info:
        lift(problem)
    assert info.value.report is not None and not info.value.report.passed


def test_dimension_six_derogatory_unsupported():
    spec = JordanSpec.of((0, [1, 1, 1]), ("1/2", [1, 2]))
    rng = random.Random(3)
    phi = pi_map(random_psi(spec, rng, 12))
    with pytest.raises(UnsupportedDimension):
        solve_node(phi, spec)


def test_two_node_lift_is_exact_rational():
    half = GaussQ(Fraction(1, 2))
    problem = LiftProblem(
        [Poly([ZERO, ONE]), Poly([ZERO, ZERO, -half, ONE])],
        [(ZERO, JordanSpec.of((0, [1, 1]))), (half, JordanSpec.of(("1/2", [1]), (0, [1])))],
    )
    res = lift(problem)
    assert isinstance(res.Phi, RationalMatrix) and res.Phi.exact
    assert res.certificate.ok
    for alpha, spec in problem.nodes:
        V = res.Phi.evaluate(alpha)
        assert all(V.rows[1][j] == ZERO for j in range(1))
        assert char_poly(V) == char_poly(jordan_matrix(spec))


def test_problem_json_round_trip():
    spec = JordanSpec.of((0, [1, 1]))
    p = LiftProblem([Poly([ZERO, ONE]), Poly([ZERO, ZERO, ONE])], [(ZERO, spec)], trunc=7)
    back = LiftProblem.from_json(p.to_json())
    assert back.phi == p.phi and back.nodes == p.nodes and back.trunc == 7
    with pytest.raises(ValueError):
        LiftProblem.from_json({**p.to_json(), "colour": 1})
