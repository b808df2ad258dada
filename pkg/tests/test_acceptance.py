"""Acceptance criteria, each at its stated size, tolerance and time budget.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``;
either way one PASS/FAIL line is printed per criterion.
"""

import random
import sys
import time
from fractions import Fraction

from spectral_lift.conditions import (
    check_conditions,
    random_product_instance,
    random_psi,
    random_spec,
)
from spectral_lift.counterexample import contradiction_report
from spectral_lift.divdiff import divdiff_table, monomial_sums, newton_expand
from spectral_lift.jordan import JordanSpec, d_indices, modified_jordan
from spectral_lift.lifting import _default_trunc, assemble, lift_single
from spectral_lift.scalars import ZERO, GaussQ
from spectral_lift.selftest import (
    ROUND_TRIP_SHAPES,
    partitions,
    random_frame,
    random_monic,
    random_points,
    valid_frame,
    worked_example,
    worked_example_ok,
)
from spectral_lift.series import Series, certifies
from spectral_lift.spectral import char_poly, is_cyclic, pi_map, poly_from_sigma

RESULTS = {}


def record(num, title, ok, seconds, budget=None, detail=""):
    within = budget is None or seconds < budget
    line = f"criterion {num:>2} {'PASS' if ok and within else 'FAIL'}: {title} [{seconds:.2f}s"
    line += f" / budget {budget}s]" if budget else "]"
    if detail:
        line += f" {detail}"
    RESULTS[num] = line
    print(line)
    return ok and within


def test_01_newton_identity():
    rng = random.Random(101)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(1000):
        K = rng.randint(2, 6)
        P = random_monic(rng, K, 8)
        pts = random_points(rng, rng.randint(1, P.degree + 1), K)
        if not newton_expand(P, pts).agrees(P):
            bad += 1
    dt = time.perf_counter() - t0
    assert record(1, "newton_expand reproduces 1000 monic polynomials", bad == 0, dt, 10, f"{bad} mismatches")


def test_02_divided_difference_oracle():
    rng = random.Random(102)
    t0 = time.perf_counter()
    bad = checks = 0
    for _ in range(200):
        pts = random_points(rng, 9, 6, near=0.0)
        tables = [divdiff_table(_monomial(j), pts) for j in range(9)]
        grouped = tables[0].points
        for k in range(9):
            sums = monomial_sums(grouped[: k + 1], 8 - k)
            for j in range(k, 9):
                got, want = tables[j].table[k][0], sums[j - k]
                got = got if isinstance(got, Series) else pts[0].like([got])
                want = want if isinstance(want, Series) else pts[0].like([want])
                n = min(got.trunc, want.trunc)
                checks += 1
                if n == 0 or got.known()[:n] != want.known()[:n]:
                    bad += 1
    dt = time.perf_counter() - t0
    assert record(2, "recursion equals monomial sums, j <= 8, k <= j, 200 tuples", bad == 0, dt, 10,
                  f"{checks} comparisons, {bad} mismatches")


def _monomial(j):
    from spectral_lift.poly import Poly
    from spectral_lift.scalars import ONE

    return Poly([ZERO] * j + [ONE])


def test_03_assembled_char_poly():
    rng = random.Random(103)
    t0 = time.perf_counter()
    bad = 0
    for i in range(500):
        n = rng.randint(2, 5)
        K = 2 * n + 2
        phi, frame = random_frame(rng, n, K) if i % 2 == 0 else valid_frame(rng, n, K)
        Phi = assemble(phi, frame).Phi
        if not (Phi.exact and char_poly(Phi).agrees(poly_from_sigma(list(phi)))):
            bad += 1
    dt = time.perf_counter() - t0
    assert record(3, "char_poly(assemble(...)) = P_[phi] on 500 exact frames", bad == 0, dt, 30, f"{bad} mismatches")


def test_04_necessity_fuzz():
    rng = random.Random(104)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(1000):
        spec = random_spec(rng, rng.randint(1, 6))
        psi = random_psi(spec, rng, spec.n + 3, degree=rng.randint(1, 3))
        if not check_conditions(pi_map(psi), spec).passed:
            bad += 1
    dt = time.perf_counter() - t0
    assert record(4, "conditions hold for 1000 random pi(Psi)", bad == 0, dt, 60, f"{bad} violations")


def test_05_round_trip():
    rng = random.Random(105)
    t0 = time.perf_counter()
    bad = floats = 0
    worst = 0.0
    for name, items in ROUND_TRIP_SHAPES.items():
        spec = JordanSpec.of(*items)
        K = _default_trunc(spec.n, [(ZERO, spec)])
        for _ in range(100):
            phi = pi_map(random_psi(spec, rng, K, degree=2))
            try:
                res = lift_single(phi, spec)
            except Exception:  # noqa: BLE001
                bad += 1
                continue
            cert = res.certificate
            cyclic = len(cert.cyclicity_samples) == 5 and all(s["cyclic"] for s in cert.cyclicity_samples)
            if res.Phi.exact:
                ok = cert.ok and not cert.advisory and cyclic
            else:
                floats += 1
                r = max((x for s in res.nodes for x in s.residuals), default=0.0)
                worst = max(worst, r)
                ok = cert.ok and cyclic and r < 1e-9
            bad += not ok
    dt = time.perf_counter() - t0
    assert record(5, "round trip, 100 lifts per shape over 8 shapes", bad == 0, dt, 120,
                  f"{bad} failures, {floats} used float jet roots, max residual {worst:.1e}")


def test_06_worked_lift():
    t0 = time.perf_counter()
    ok = worked_example_ok(worked_example())
    assert record(6, "worked n=2 lift equals [[0, z], [-z, z]]", ok, time.perf_counter() - t0)


def test_07_counterexample_grid():
    t0 = time.perf_counter()
    bad = 0
    cells = []
    for k in (3, 4, 5):
        for l in (3, 4, 5):
            r = contradiction_report(k, l, ZERO, GaussQ(Fraction(1, 2)), 50, random.Random(k * 10 + l))
            ok = (r.achieved_order == k - 1 and r.required_order == k + l - 3 and r.violated
                  and all(o == k - 1 for o in r.observed_orders) and len(r.observed_orders) == 50)
            bad += not ok
            cells.append(f"({k},{l}):{r.achieved_order}<{r.required_order}")
    dt = time.perf_counter() - t0
    assert record(7, "counterexample grid k, l in {3,4,5}", bad == 0, dt, 30, " ".join(cells))


def test_08_modified_jordan():
    rng = random.Random(108)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(500):
        spec = random_spec(rng, rng.randint(1, 6))
        r = modified_jordan(spec)
        T = r.transition
        if T.inverse() @ r.A @ T != r.A_prime:
            bad += 1
        if all(p == 1 for p in r.pattern) != is_cyclic(r.A_prime):
            bad += 1
    dt = time.perf_counter() - t0
    assert record(8, "modified Jordan certificates on 500 specs", bad == 0, dt, 30, f"{bad} failures")


def test_09_d_index_laws():
    t0 = time.perf_counter()
    bad = cases = 0
    for m in range(1, 9):
        for blocks in partitions(m):
            cases += 1
            d = d_indices(blocks)
            ok = d[0] == 1 and all(b <= a + 1 for a, b in zip(d, d[1:]))
            if len(blocks) == 1:
                ok = ok and d == (1,) * m
            if set(blocks) == {1}:
                ok = ok and d == tuple(range(1, m + 1))
            bad += not ok
    dt = time.perf_counter() - t0
    assert record(9, "d-index laws on all partitions of m <= 8", bad == 0, dt, 5, f"{cases} partitions")


def _convolve_orders(P1, P2, count):
    """Orders of the low coefficients of ``P1 * P2`` by explicit convolution."""
    out = []
    for j in range(count):
        acc = None
        for i in range(j + 1):
            a, b = P1[i], P2[j - i]
            if a is None or b is None or not isinstance(a, Series):
                continue
            term = a * b
            acc = term if acc is None else acc + term
        out.append(acc.order())
    return out


def _meets(orders, ks):
    verdicts = [certifies(o, k) for o, k in zip(orders, ks)]
    assert None not in verdicts
    return all(verdicts)


def test_10_product_orders():
    rng = random.Random(110)
    t0 = time.perf_counter()
    bad = both = neither = 0
    for _ in range(500):
        P1, P2, ks = random_product_instance(rng)
        m = P1.degree
        factor = _meets([P1[j].order() for j in range(m)], ks)
        product = _meets(_convolve_orders(P1, P2, m), ks)
        if factor != product:
            bad += 1
        both += factor and product
        neither += not factor and not product
    dt = time.perf_counter() - t0
    ok = bad == 0 and both > 0 and neither > 0
    assert record(10, "factor and product vanishing orders agree on 500 factorizations", ok, dt, 10,
                  f"{both} both-true, {neither} both-false, {bad} disagreements")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
