"""The family ``B^lam_k(z)`` that defeats the divided-difference lifting for ``n >= 6``.

``B^lam_k(z)`` is ``lam`` on the diagonal, ``z`` on the superdiagonal except
for a final ``1``, and ``z`` in the bottom-left corner; its characteristic
polynomial is ``(t - lam)^k - z^(k-1)``.  For the direct sum of two such
blocks with ``k, l >= 3`` any lift of the bidiagonal-plus-last-row shape would
force ``ord P(phi_11) >= k + l - 3``, while ``ord P(phi_11) = k - 1`` for every
holomorphic ``phi_11`` with ``phi_11(0) = lam_1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import BadParameters
from .jordan import JordanSpec, _jordan_superdiagonal, d_indices, spec_from_matrix
from .matrix import Matrix
from .scalars import ONE, ZERO, GaussQ, exact, scalar_to_json
from .series import AtLeast, Series
from .spectral import SigmaVector, char_poly, membership

SUM_LIMIT = 16  # direct sums of two blocks may exceed the general dimension cap


def b_lambda_k(lam, k: int, trunc: int = 8, center=ZERO) -> Matrix:
    """The ``k x k`` series matrix ``B^lam_k(z)`` (centered at 0)."""
    if k < 2:
        raise BadParameters("B^lam_k needs k >= 2")
    lam = exact(lam)
    z = Series([ZERO, ONE], trunc, center, exact=True)
    zero = z.like([])
    rows = [[zero] * k for _ in range(k)]
    for i in range(k):
        rows[i][i] = z.like([lam])
    for i in range(k - 2):
        rows[i][i + 1] = z
    rows[k - 2][k - 1] = z.like([ONE])
    rows[k - 1][0] = z if k > 2 else z + rows[k - 1][0]
    return Matrix(rows)


def direct_sum(A: Matrix, B: Matrix) -> Matrix:
    n, m = A.n, B.n
    zero = A.sample.like([]) if isinstance(A.sample, Series) else ZERO
    rows = []
    for i in range(n):
        rows.append(list(A.rows[i]) + [zero] * m)
    for i in range(m):
        rows.append([zero] * n + list(B.rows[i]))
    return Matrix(rows)


def block_spec(lam, k: int) -> JordanSpec:
    """Jordan structure of ``B^lam_k(0)``: ``k - 2`` singleton blocks and one block of size 2."""
    if k > 8:
        raise BadParameters("block size is capped at 8")
    return spec_from_matrix(b_lambda_k(lam, k, 2).value(), [lam])


@dataclass
class CounterexampleReport:
    k: int
    l: int
    lam1: object
    lam2: object
    achieved_order: int
    required_order: int
    d_m1: int
    f_zero_count: int
    observed_orders: list = field(default_factory=list)
    multiplicative: bool = True

    @property
    def violated(self) -> bool:
        return self.achieved_order < self.required_order

    @property
    def stable(self) -> bool:
        """Every randomized ``phi_11`` gave the same achieved order."""
        return all(o == self.achieved_order for o in self.observed_orders)

    def to_json(self):
        return {
            "k": self.k,
            "l": self.l,
            "lambda1": scalar_to_json(self.lam1),
            "lambda2": scalar_to_json(self.lam2),
            "achieved_order": self.achieved_order,
            "required_order": self.required_order,
            "violated": self.violated,
            "d_m1": self.d_m1,
            "f_zero_count": self.f_zero_count,
            "trials": len(self.observed_orders),
            "stable": self.stable,
            "charpoly_multiplicative": self.multiplicative,
        }

    def table(self) -> str:
        return (
            f"k={self.k} l={self.l} lambda1={self.lam1} lambda2={self.lam2}: "
            f"achieved {self.achieved_order}, required {self.required_order}, "
            f"{'violated' if self.violated else 'not violated'} ({len(self.observed_orders)} trials)"
        )


def _random_phi11(rng: random.Random, lam, trunc: int, degree: int = 4) -> Series:
    cs = [exact(lam)]
    for _ in range(degree):
        cs.append(GaussQ(rng.randint(-5, 5), rng.randint(-5, 5) if rng.random() < 0.3 else 0) / rng.randint(1, 4))
    return Series(cs, trunc, exact=True)


def contradiction_report(k: int, l: int, lam1=ZERO, lam2=GaussQ(1, 0) / 2, trials: int = 50,
                         rng: random.Random | None = None) -> CounterexampleReport:
    """Compare the achievable ``ord P(phi_11)`` with the bound any lift of the formula shape needs."""
    if k < 3 or l < 3:
        raise BadParameters("the counterexample needs k, l >= 3")
    lam1, lam2 = exact(lam1), exact(lam2)
    if lam1 == lam2:
        raise BadParameters("lambda1 and lambda2 must differ")
    rng = rng or random.Random(0)
    trunc = k + l + 2
    B1 = b_lambda_k(lam1, k, trunc)
    B2 = b_lambda_k(lam2, l, trunc)
    P = char_poly(B1) * char_poly(B2)
    multiplicative = char_poly(direct_sum(B1, B2), limit=SUM_LIMIT) == P
    s1, s2 = block_spec(lam1, k), block_spec(lam2, l)
    d_m1 = d_indices(s1.eigenvalues[0].blocks)[-1]
    # columns past the first group: the junction carries 1, the second group's block starts carry 0
    f_zeros = sum(1 for p in _jordan_superdiagonal(s2) if p == 0)
    required = d_m1 + f_zeros
    observed = []
    for t in range(trials):
        x = Series([lam1], trunc, exact=True) if t == 0 else _random_phi11(rng, lam1, trunc)
        o = P(x).order()
        observed.append(o.bound if isinstance(o, AtLeast) else o)
    achieved = observed[0]
    return CounterexampleReport(k, l, lam1, lam2, achieved, required, d_m1, f_zeros, observed, multiplicative)


def epsilon_reparametrize(phi: SigmaVector, eps, samples=None):
    """``phi(eps * z)`` plus a membership check of the rescaled map at sample points.

    Returns ``(rescaled, memberships)`` where each membership is
    ``(point, "inside" | "outside" | "boundary-uncertain")``.
    """
    if not eps:
        raise BadParameters("eps must be nonzero")
    out = SigmaVector([c.scale_variable(eps) for c in phi])
    pts = samples if samples is not None else [GaussQ(1, 0) / 2, GaussQ(0, 1) / 2, GaussQ(-9, 0) / 10]
    checks = []
    for z in pts:
        value = [c(z) for c in out]
        checks.append((z, membership(value)))
    return out, checks


def counterexample_map(k: int, l: int, lam1=ZERO, lam2=GaussQ(1, 0) / 2, trunc: int | None = None) -> SigmaVector:
    """``pi`` of the direct sum ``B^lam1_k(z) + B^lam2_l(z)`` (via the product of the block polynomials)."""
    trunc = trunc or k + l + 2
    P = char_poly(b_lambda_k(lam1, k, trunc)) * char_poly(b_lambda_k(lam2, l, trunc))
    n = k + l
    return SigmaVector([P[n - j] if j % 2 == 0 else -P[n - j] for j in range(1, n + 1)])


__all__ = [
    "CounterexampleReport",
    "b_lambda_k",
    "block_spec",
    "contradiction_report",
    "counterexample_map",
    "direct_sum",
    "epsilon_reparametrize",
]
