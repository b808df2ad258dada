"""Seeded invariant suites shared by ``spectral-lift selftest`` and the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .conditions import necessity_fuzz, product_orders_check, random_gauss, random_product_instance, random_psi, random_spec
from .counterexample import contradiction_report
from .divdiff import divdiff, divdiff_monomial_oracle, newton_expand
from .jordan import JordanSpec, d_indices, d_indices_krylov, modified_jordan
from .lifting import LiftingFrame, LiftProblem, _default_trunc, assemble, classify_shape, lift, lift_single
from .poly import Poly
from .scalars import ONE, ZERO, GaussQ
from .series import Series
from .spectral import char_poly, is_cyclic, pi_map, poly_from_sigma

# one target per case shape; values are small rationals so everything stays exact when it can
ROUND_TRIP_SHAPES = {
    "cyclic": [(0, [3]), ("1/2", [2])],
    "scalar": [(0, [1, 1, 1])],
    "n4_one_derogatory_group": [(0, [1, 2]), ("1/2", [1])],
    "n4_triple_scalar_group": [(0, [1, 1, 1]), ("1/2", [1])],
    "n4_two_derogatory_groups": [(0, [1, 1]), ("1/2", [1, 1])],
    "n5_general": [(0, [1, 1]), ("1/2", [1]), ("-1/2", [1]), ("1/3", [1])],
    "n5_two_scalar_groups": [(0, [1, 1, 1]), ("1/2", [1, 1])],
    "n5_two_derogatory_groups": [("1/2", [1, 1]), (0, [1, 2])],
}


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    seconds: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{mark} {self.name}: {self.cases} cases, {self.failures} failures, {self.seconds:.2f}s{extra}"

    def to_json(self):
        return {"name": self.name, "cases": self.cases, "failures": self.failures,
                "pass": self.passed, "seconds": round(self.seconds, 3), "detail": self.detail}


# -- random generators -----------------------------------------------------------------------

def random_series(rng: random.Random, trunc: int, center=ZERO, lowest: int = 0) -> Series:
    cs = [ZERO] * lowest + [random_gauss(rng) for _ in range(trunc - lowest)]
    return Series(cs, trunc, center, exact=True)


def random_monic(rng: random.Random, trunc: int, max_degree: int = 8) -> Poly:
    """Monic polynomial whose lower coefficients are scalars or series."""
    d = rng.randint(0, max_degree)
    cs = []
    for _ in range(d):
        cs.append(random_series(rng, trunc) if rng.random() < 0.5 else random_gauss(rng))
    cs.append(Series([ONE], trunc, exact=True))
    return Poly(cs)


def random_points(rng: random.Random, count: int, trunc: int, near: float = 0.15):
    """Series points, with deliberate repeats and (with probability ``near``) points that only agree at the center.

    Other fresh points get a center value not used before.
    """
    pts = []
    for _ in range(count):
        r = rng.random()
        if pts and r < 0.25:
            pts.append(rng.choice(pts))
        elif pts and r < 0.25 + near:
            base = rng.choice(pts)
            pts.append(base + Series([ZERO] * 2 + [random_gauss(rng)], trunc, exact=True))
        else:
            x = random_series(rng, trunc)
            while any(x[0] == p[0] for p in pts):
                x = random_series(rng, trunc)
            pts.append(x)
    return pts


def random_frame(rng: random.Random, n: int, trunc: int) -> tuple:
    """``(phi, frame)`` with unit superdiagonal functions and random diagonal jets."""
    phi = [random_series(rng, trunc) for _ in range(n)]
    f = []
    for _ in range(n - 1):
        s = random_series(rng, trunc)
        while not s[0]:
            s = random_series(rng, trunc)
        f.append(s)
    diag = [random_series(rng, trunc) for _ in range(n - 1)]
    return phi, LiftingFrame(f, diag)


def valid_frame(rng: random.Random, n: int, trunc: int) -> tuple:
    """``(phi, frame)`` from a random germ through an exact node solution (zeros in ``f`` allowed).

    Germs whose jets need irrational roots are redrawn.
    """
    from .lifting import frame_from_node, solve_node

    while True:
        spec = random_spec(rng, n)
        phi = pi_map(random_psi(spec, rng, trunc))
        sol = solve_node(phi, spec)
        if sol.exact:
            return phi, frame_from_node(sol, list(phi)[0])


def partitions(m: int, smallest: int = 1):
    """Increasing partitions of ``m``."""
    if m == 0:
        yield ()
        return
    for first in range(smallest, m + 1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


# -- suites -----------------------------------------------------------------------------------

def suite_series_ring(rng: random.Random, count: int) -> SuiteResult:
    t0, bad = time.perf_counter(), 0
    for _ in range(count):
        K = rng.randint(1, 7)
        a, b, c = (random_series(rng, K) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            bad += 1
    return SuiteResult("series ring axioms", count, bad, time.perf_counter() - t0)


def suite_newton(rng: random.Random, count: int) -> SuiteResult:
    t0, bad = time.perf_counter(), 0
    for _ in range(count):
        K = rng.randint(2, 6)
        P = random_monic(rng, K)
        pts = random_points(rng, rng.randint(1, max(1, P.degree + 1)), K)
        if not newton_expand(P, pts).agrees(P):
            bad += 1
    return SuiteResult("newton identity", count, bad, time.perf_counter() - t0)


def suite_divdiff_oracle(rng: random.Random, count: int, max_j: int = 8) -> SuiteResult:
    t0, bad, cases = time.perf_counter(), 0, 0
    for _ in range(count):
        j = rng.randint(0, max_j)
        k = rng.randint(0, j)
        K = rng.randint(2, 5)
        pts = random_points(rng, k + 1, K, near=0.0)
        P = Poly([ZERO] * j + [ONE])
        cases += 1
        got = divdiff(P, pts)
        want = divdiff_monomial_oracle(j, k, pts)
        if not isinstance(got, Series):
            got = pts[0].like([got])
        if not isinstance(want, Series):
            want = pts[0].like([want])
        n = min(got.trunc, want.trunc)
        if got.known()[:n] != want.known()[:n]:
            bad += 1
    return SuiteResult("divided-difference oracle", cases, bad, time.perf_counter() - t0)


def suite_frames(rng: random.Random, count: int) -> SuiteResult:
    t0, bad = time.perf_counter(), 0
    for i in range(count):
        n = rng.randint(2, 5)
        K = 2 * n + 2
        phi, frame = random_frame(rng, n, K) if i % 2 == 0 else valid_frame(rng, n, K)
        res = assemble(phi, frame)
        cp, P = char_poly(res.Phi), poly_from_sigma(list(phi))
        if not (res.Phi.exact and res.certificate.charpoly_ok and cp.agrees(P)):
            bad += 1
    return SuiteResult("char-poly identity of assembled frames", count, bad, time.perf_counter() - t0)


def suite_necessity(rng: random.Random, count: int, max_n: int = 6) -> SuiteResult:
    t0, bad = time.perf_counter(), 0
    for _ in range(count):
        n = rng.randint(1, max_n)
        spec = random_spec(rng, n)
        psi = random_psi(spec, rng, n + 3, degree=rng.randint(1, 3))
        if not necessity_fuzz(spec, psi):
            bad += 1
    return SuiteResult("necessity fuzz", count, bad, time.perf_counter() - t0)


def suite_round_trip(rng: random.Random, per_shape: int, residual_tol: float = 1e-9) -> SuiteResult:
    t0, bad, cases, worst = time.perf_counter(), 0, 0, 0.0
    for name, items in ROUND_TRIP_SHAPES.items():
        spec = JordanSpec.of(*items)
        if classify_shape(spec) != name:
            bad += 1
        K = _default_trunc(spec.n, [(ZERO, spec)])
        for _ in range(per_shape):
            cases += 1
            phi = pi_map(random_psi(spec, rng, K, degree=2))
            try:
                res = lift_single(phi, spec)
            except Exception:  # noqa: BLE001 - any failure is a failed case
                bad += 1
                continue
            cert = res.certificate
            res_max = max((r for s in res.nodes for r in s.residuals), default=0.0)
            worst = max(worst, res_max)
            cyc = len(cert.cyclicity_samples) == 5 and all(c["cyclic"] for c in cert.cyclicity_samples)
            if not (cert.ok and cyc and res_max < residual_tol):
                bad += 1
            elif res.Phi.exact and cert.advisory:
                bad += 1
    return SuiteResult("round-trip liftability", cases, bad, time.perf_counter() - t0, f"max jet residual {worst:.1e}")


def worked_example():
    """The n = 2 lift of ``(z, z^2)`` at 0 with target the zero matrix."""
    spec = JordanSpec.of((0, [1, 1]))
    problem = LiftProblem([Poly([ZERO, ONE]), Poly([ZERO, ZERO, ONE])], [(ZERO, spec)])
    return lift(problem)


def worked_example_ok(res) -> bool:
    K = res.Phi.sample.trunc
    z = Series([ZERO, ONE], K, exact=True)
    zero = z.like([])
    want = [[zero, z], [-z, z]]
    Phi = res.Phi
    if not Phi.exact:
        return False
    same = all(Phi.rows[i][j].agrees(want[i][j]) for i in range(2) for j in range(2))
    trace = Phi.trace().agrees(z)
    det = (Phi.rows[0][0] * Phi.rows[1][1] - Phi.rows[0][1] * Phi.rows[1][0]).agrees(z * z)
    return same and trace and det and res.certificate.ok


def suite_worked(rng: random.Random, count: int = 1) -> SuiteResult:
    t0 = time.perf_counter()
    ok = worked_example_ok(worked_example())
    return SuiteResult("worked n=2 lift", 1, 0 if ok else 1, time.perf_counter() - t0)


def suite_counterexample(rng: random.Random, trials: int, ks=(3, 4, 5)) -> SuiteResult:
    t0, bad, cases = time.perf_counter(), 0, 0
    for k in ks:
        for l in ks:
            cases += 1
            r = contradiction_report(k, l, ZERO, GaussQ(Fraction(1, 2)), trials, random.Random(rng.random()))
            if not (r.achieved_order == k - 1 and r.required_order == k + l - 3 and r.violated and r.stable
                    and r.multiplicative):
                bad += 1
    return SuiteResult("counterexample grid", cases, bad, time.perf_counter() - t0)


def suite_mjf(rng: random.Random, count: int, max_n: int = 6) -> SuiteResult:
    t0, bad = time.perf_counter(), 0
    for _ in range(count):
        spec = random_spec(rng, rng.randint(1, max_n))
        r = modified_jordan(spec)
        if not (r.A @ r.transition == r.transition @ r.A_prime):
            bad += 1
        if r.transition.inverse() @ r.A @ r.transition != r.A_prime:
            bad += 1
        if all(p == 1 for p in r.pattern) != is_cyclic(r.A_prime):
            bad += 1
    return SuiteResult("modified Jordan certificates", count, bad, time.perf_counter() - t0)


def suite_d_index(rng: random.Random, max_m: int = 8, krylov_upto: int = 0) -> SuiteResult:
    t0, bad, cases = time.perf_counter(), 0, 0
    for m in range(1, max_m + 1):
        for blocks in partitions(m):
            cases += 1
            d = d_indices(blocks)
            ok = len(d) == m and d[0] == 1 and all(b <= a + 1 for a, b in zip(d, d[1:]))
            if len(blocks) == 1:
                ok = ok and all(x == 1 for x in d)
            if all(b == 1 for b in blocks):
                ok = ok and d == tuple(range(1, m + 1))
            if m <= krylov_upto:
                ok = ok and d == d_indices_krylov(blocks)
            bad += not ok
    return SuiteResult("d-index laws", cases, bad, time.perf_counter() - t0)


def suite_product_orders(rng: random.Random, count: int) -> SuiteResult:
    t0, bad = time.perf_counter(), 0
    for _ in range(count):
        P1, P2, ks = random_product_instance(rng)
        if not product_orders_check(P1, P2, ks):
            bad += 1
    return SuiteResult("product polynomial equivalence", count, bad, time.perf_counter() - t0)


FULL = [
    (suite_series_ring, 200),
    (suite_newton, 1000),
    (suite_divdiff_oracle, 200),
    (suite_frames, 500),
    (suite_necessity, 1000),
    (suite_round_trip, 100),
    (suite_worked, 1),
    (suite_counterexample, 50),
    (suite_mjf, 500),
    (suite_d_index, 8),
    (suite_product_orders, 500),
]

QUICK = [
    (suite_series_ring, 30),
    (suite_newton, 60),
    (suite_divdiff_oracle, 40),
    (suite_frames, 20),
    (suite_necessity, 60),
    (suite_round_trip, 2),
    (suite_worked, 1),
    (suite_counterexample, 5),
    (suite_mjf, 40),
    (suite_d_index, 6),
    (suite_product_orders, 60),
]


def run_selftest(seed: int = 0, quick: bool = False):
    """Run every suite with a per-suite generator derived from ``seed``."""
    out = []
    for i, (suite, count) in enumerate(QUICK if quick else FULL):
        rng = random.Random(f"{seed}:{i}")
        out.append(suite(rng, count))
    return out


__all__ = [
    "ROUND_TRIP_SHAPES",
    "SuiteResult",
    "partitions",
    "random_frame",
    "random_monic",
    "random_points",
    "random_series",
    "run_selftest",
    "valid_frame",
    "worked_example",
    "worked_example_ok",
]
