"""Local lifting conditions: vanishing orders of ``P^(k)`` at each eigenvalue."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import PreconditionViolated, TruncationTooSmall
from .jordan import JordanSpec, d_indices, jordan_matrix
from .matrix import Matrix
from .poly import Poly
from .scalars import DEFAULT_TOL, ONE, ZERO, GaussQ, exact, scalar_to_json
from .series import AtLeast, Series, certifies, order_to_json
from .spectral import SigmaVector, pi_map, poly_from_sigma


@dataclass(frozen=True)
class ConditionEntry:
    node: object
    eigenvalue: object
    k: int
    required: int
    achieved: object  # int or AtLeast
    passed: bool

    def to_json(self):
        return {
            "node": scalar_to_json(self.node),
            "eigenvalue": scalar_to_json(self.eigenvalue),
            "k": self.k,
            "required": self.required,
            "achieved": order_to_json(self.achieved),
            "pass": self.passed,
        }


@dataclass
class ConditionReport:
    entries: list = field(default_factory=list)
    advisory: bool = False  # float-track reports cannot certify orders

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def merge(self, other: "ConditionReport") -> "ConditionReport":
        return ConditionReport(self.entries + other.entries, self.advisory or other.advisory)

    def to_json(self):
        return {"pass": self.passed, "advisory": self.advisory, "conditions": [e.to_json() for e in self.entries]}


def required_orders(spec: JordanSpec):
    """``{(j, k): d_{m_j - k}(B_j)}`` for every eigenvalue index ``j`` and ``0 <= k < m_j``."""
    out = {}
    for j, e in enumerate(spec.eigenvalues):
        d = d_indices(e.blocks)
        m = e.multiplicity
        for k in range(m):
            out[(j, k)] = d[m - k - 1]
    return out


def check_conditions(phi, spec: JordanSpec, tol: float = DEFAULT_TOL) -> ConditionReport:
    """Evaluate ``d^k P_[phi] / dt^k`` at each eigenvalue and compare vanishing orders.

    ``phi`` is a sigma vector of series centred at the node.  On the float
    track the verdict is advisory.
    """
    comps = list(phi)
    if not comps or not all(isinstance(c, Series) for c in comps):
        raise TypeError("check_conditions expects series components")
    if len(comps) != spec.n:
        raise ValueError(f"phi has {len(comps)} components but the spec has size {spec.n}")
    node = comps[0].center
    exact_track = all(c.exact for c in comps)
    P = poly_from_sigma(comps)
    report = ConditionReport(advisory=not exact_track)
    for j, e in enumerate(spec.eigenvalues):
        d = d_indices(e.blocks)
        m = e.multiplicity
        lam = e.value if exact_track else complex(e.value)
        Pk = P
        for k in range(m):
            if k:
                Pk = Pk.derivative()
            val = Pk(lam)
            if not isinstance(val, Series):
                val = comps[0].like([val])
            req = d[m - k - 1]
            ach = val.order(tol)
            ok = certifies(ach, req)
            if ok is None:
                raise TruncationTooSmall(
                    f"truncation {val.trunc} cannot certify order {req} at eigenvalue {e.value}, k={k}"
                )
            report.entries.append(ConditionEntry(node, e.value, k, req, ach, bool(ok)))
    return report


def recenter(phi_polys, alpha, trunc: int):
    """Sigma vector of series at ``alpha`` from polynomial components (exact shift)."""
    return SigmaVector([p.to_series(alpha, trunc) for p in phi_polys])


def check_conditions_multi(phi_polys, nodes, trunc: int, tol: float = DEFAULT_TOL) -> ConditionReport:
    """Check every ``(alpha, spec)`` node by re-centring the polynomial map at it."""
    report = ConditionReport()
    for alpha, spec in nodes:
        report = report.merge(check_conditions(recenter(phi_polys, alpha, trunc), spec, tol))
    return report


# -- necessity fuzzing ------------------------------------------------------------

def random_gauss(rng: random.Random, span: int = 3, complex_prob: float = 0.3) -> GaussQ:
    re = rng.randint(-span, span)
    if rng.random() < 0.3:
        re = exact(re) / rng.randint(1, 3)
    im = rng.randint(-span, span) if rng.random() < complex_prob else 0
    return exact(re) + exact(im) * GaussQ(0, 1)


def random_spec(rng: random.Random, n: int, values=None) -> JordanSpec:
    """Random Jordan structure of size ``n`` with distinct small rational eigenvalues."""
    pool = list(values) if values is not None else [exact(v) / 2 for v in range(-3, 4)]
    remaining, items = n, []
    rng.shuffle(pool)
    while remaining:
        m = rng.randint(1, remaining)
        blocks, left = [], m
        while left:
            b = rng.randint(1, left)
            blocks.append(b)
            left -= b
        items.append((pool.pop(), blocks))
        remaining -= m
    return JordanSpec.of(*items)


def random_psi(spec: JordanSpec, rng: random.Random, trunc: int, alpha=ZERO, degree: int = 2, density: float = 0.7):
    """Polynomial matrix germ ``A + sum_k (z-alpha)^k E_k`` with ``A = jordan_matrix(spec)``."""
    A = jordan_matrix(spec)
    n = A.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            cs = [A.rows[i][j]]
            for _ in range(degree):
                cs.append(random_gauss(rng) if rng.random() < density else ZERO)
            row.append(Series(cs, trunc, alpha, exact=True))
        rows.append(row)
    return Matrix(rows)


def necessity_fuzz(spec: JordanSpec, psi: Matrix, tol: float = DEFAULT_TOL) -> bool:
    """``check_conditions(pi(psi), spec)``; a failure would contradict necessity."""
    return check_conditions(pi_map(psi), spec, tol).passed


# -- product polynomial equivalence --------------------------------------------

def _orders(P: Poly, count: int, tol):
    out = []
    for j in range(count):
        c = P[j]
        out.append(c.order(tol) if isinstance(c, Series) else (AtLeast(1 << 30) if not c else 0))
    return out


def _meets(orders, ks):
    for o, k in zip(orders, ks):
        ok = certifies(o, k)
        if ok is None:
            raise TruncationTooSmall("truncation too small to compare coefficient orders")
        if not ok:
            return False
    return True


def product_orders_check(P1: Poly, P2: Poly, ks, tol: float = DEFAULT_TOL) -> bool:
    """Both sides of the factor/product vanishing-order equivalence agree.

    ``P1`` reduces to ``t^m`` at the center, ``P2`` has a unit constant term,
    and ``ks`` is a non-increasing sequence of positive integers of length ``m``.
    """
    m = P1.degree
    ks = list(ks)
    if len(ks) != m:
        raise PreconditionViolated(f"need {m} orders, got {len(ks)}")
    if any(k < 1 for k in ks) or any(a < b for a, b in zip(ks, ks[1:])):
        raise PreconditionViolated("orders must be positive and non-increasing")

    def val(c):
        return c.value() if isinstance(c, Series) else c

    lead = val(P1[m])
    if lead != ONE and not (isinstance(lead, complex) and abs(lead - 1) <= tol):
        raise PreconditionViolated("leading coefficient of the first factor must be 1 at the center")
    for j in range(m):
        v = val(P1[j])
        if (v if isinstance(v, GaussQ) else abs(v) > tol):
            raise PreconditionViolated("first factor must reduce to t^m at the center")
    c0 = val(P2[0])
    if not (c0 if isinstance(c0, GaussQ) else abs(c0) > tol):
        raise PreconditionViolated("second factor must have a unit constant term")
    P0 = P1 * P2
    lhs = _meets(_orders(P0, m, tol), ks)
    rhs = _meets(_orders(P1, m, tol), ks)
    return lhs == rhs


def random_product_instance(rng: random.Random, trunc: int = 8):
    """Random ``(P1, P2, ks)`` where the factor coefficients sometimes meet ``ks`` and sometimes not."""
    m1 = rng.randint(1, 4)
    m2 = rng.randint(0, 3)
    top = rng.randint(1, trunc - 2)
    ks = sorted((rng.randint(1, top) for _ in range(m1)), reverse=True)
    coeffs1 = []
    meet = rng.random() < 0.5
    for j in range(m1):
        start = ks[j] if meet else rng.randint(1, ks[j])
        cs = [ZERO] * start + [random_gauss(rng) for _ in range(trunc - start)]
        coeffs1.append(Series(cs, trunc, exact=True))
    coeffs1.append(Series([ONE], trunc, exact=True))
    c0 = random_gauss(rng)
    while not c0:
        c0 = random_gauss(rng)
    coeffs2 = [Series([c0] + [random_gauss(rng) for _ in range(trunc - 1)], trunc, exact=True)]
    for _ in range(m2):
        coeffs2.append(Series([random_gauss(rng) for _ in range(trunc)], trunc, exact=True))
    coeffs2.append(Series([ONE], trunc, exact=True))
    return Poly(coeffs1), Poly(coeffs2), ks
