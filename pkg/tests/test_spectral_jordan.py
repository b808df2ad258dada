import itertools
import random
from fractions import Fraction

import pytest

from spectral_lift.errors import MalformedShape
from spectral_lift.jordan import (
    JordanSpec,
    d_indices,
    d_indices_krylov,
    jordan_matrix,
    modified_jordan,
    spec_from_matrix,
    superdiagonal_pattern,
)
from spectral_lift.matrix import Matrix, krylov_rank
from spectral_lift.scalars import ONE, ZERO, GaussQ
from spectral_lift.selftest import partitions, random_series
from spectral_lift.series import Series
from spectral_lift.spectral import (
    SigmaVector,
    char_poly,
    companion_matrix,
    is_cyclic,
    lift_cyclic,
    membership,
    pi_map,
    poly_from_sigma,
)


def q(x):
    return GaussQ(Fraction(x))


def test_char_poly_small():
    M = Matrix([[q(1), q(2)], [q(3), q(4)]])
    P = char_poly(M)
    assert [P[0], P[1], P[2]] == [q(-2), q(-5), ONE]
    assert list(pi_map(M)) == [q(5), q(-2)]


def test_poly_from_sigma_inverts_pi(rng):
    for _ in range(20):
        n = rng.randint(1, 5)
        M = Matrix([[GaussQ(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
        assert poly_from_sigma(pi_map(M)) == char_poly(M)


def test_lift_cyclic_identity(rng):
    for _ in range(100):
        n = rng.randint(1, 5)
        phi = SigmaVector([random_series(rng, 5) for _ in range(n)])
        assert pi_map(lift_cyclic(phi)).agrees(phi)


def test_lift_cyclic_example():
    z = Series([ZERO, ONE], 4, exact=True)
    M = companion_matrix([z, -(z * z)])
    assert M.rows[0][1] == z.like([ONE])
    assert M.rows[1][0] == -(z * z) and M.rows[1][1] == z
    L = lift_cyclic([z, z * z])  # sigma = (trace, det)
    assert L.rows[1][0] == -(z * z) and L.rows[1][1] == z


def test_is_cyclic_against_krylov(rng):
    for _ in range(60):
        n = rng.randint(1, 4)
        M = Matrix([[GaussQ(rng.choice([0, 0, 1, -1, 2])) for _ in range(n)] for _ in range(n)])
        # cyclic iff some standard or small integer vector spans a Krylov basis
        found = False
        for v in itertools.product([0, 1, -1, 2], repeat=n):
            cols, cur = [], [GaussQ(x) for x in v]
            for _ in range(n):
                cols.append(cur)
                cur = [sum((M.rows[i][j] * cur[j] for j in range(n)), ZERO) for i in range(n)]
            if krylov_rank(cols) == n:
                found = True
                break
        if found:
            assert is_cyclic(M)
        if is_cyclic(M):
            C = companion_matrix([-(x) if j % 2 else x for j, x in enumerate(pi_map(M))])
            assert char_poly(C) == char_poly(M)


def test_membership():
    assert membership(Matrix([[q("1/2"), ZERO], [ZERO, q("-1/3")]])) == "inside"
    assert membership(Matrix([[q(2), ZERO], [ZERO, ZERO]])) == "outside"
    assert membership([q(0), q(0)]) == "inside"


@pytest.mark.parametrize("m", range(1, 9))
def test_d_index_laws(m):
    for blocks in partitions(m):
        d = d_indices(blocks)
        assert d[0] == 1
        assert all(b <= a + 1 for a, b in zip(d, d[1:]))
        if len(blocks) == 1:
            assert d == (1,) * m
        if set(blocks) == {1}:
            assert d == tuple(range(1, m + 1))
        if m <= 5:
            assert d == d_indices_krylov(blocks)


def test_d_indices_example():
    assert d_indices([1, 2]) == (1, 1, 2)
    assert d_indices([1, 1, 1]) == (1, 2, 3)


def test_modified_jordan_two_by_two():
    r = modified_jordan(JordanSpec.of((0, [1]), ("1/2", [1])))
    assert r.A_prime == Matrix([[ZERO, ONE], [ZERO, q("1/2")]])
    assert r.transition == Matrix([[ONE, q(-2)], [ZERO, ONE]])
    assert r.A @ r.transition == r.transition @ r.A_prime


def test_modified_jordan_patterns():
    r = modified_jordan(JordanSpec.of((0, [1, 1]), ("1/2", [1, 2]), ("1/3", [1])))
    assert r.pattern == (0, 1, 0, 1, 1)
    assert superdiagonal_pattern(r.A_prime) == r.pattern
    cyc = modified_jordan(JordanSpec.of((0, [2]), ("1/2", [1])))
    assert all(p == 1 for p in cyc.pattern) and is_cyclic(cyc.A_prime)
    scal = modified_jordan(JordanSpec.of((0, [1, 1, 1])))
    assert scal.pattern == (0, 0)


def test_malformed_shape():
    with pytest.raises(MalformedShape):
        superdiagonal_pattern(Matrix([[ZERO, q(2)], [ZERO, ZERO]]))


def test_spec_round_trip(rng):
    for _ in range(30):
        from spectral_lift.conditions import random_spec

        spec = random_spec(rng, rng.randint(1, 6))
        got = spec_from_matrix(jordan_matrix(spec), [e.value for e in spec.eigenvalues])
        assert got == spec
        assert JordanSpec.from_json(spec.to_json()) == spec


def test_spec_rejects_unknown_fields():
    with pytest.raises(ValueError):
        JordanSpec.from_json({"eigenvalues": [], "extra": 1})
