"""Divided differences of polynomials at (possibly series-valued) points."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import InternalInvariantError
from .poly import Poly
from .scalars import DEFAULT_TOL, ONE, exact
from .series import AtLeast, Series, series_div


def _sample(P: Poly, points):
    for x in points:
        if isinstance(x, Series):
            return x
    for c in P.coeffs:
        if isinstance(c, Series):
            return c
    return None


def _lift(x, sample):
    if sample is None or isinstance(x, Series):
        return x
    return sample.like([x])


def same_point(x, y, tol: float = DEFAULT_TOL) -> bool:
    """Structural equality of points.

    Exact series must agree on every known coefficient; floating data merges
    when every coefficient differs by at most ``tol``.
    """
    if isinstance(x, Series):
        if x.exact:
            n = min(x.trunc, y.trunc)
            return x.known()[:n] == y.known()[:n]
        return x.agrees(y, tol)
    if isinstance(x, complex) or isinstance(y, complex):
        return abs(complex(x) - complex(y)) <= tol
    return x == y


def _group(points, tol):
    """Reorder so structurally equal points sit next to each other (divided differences are symmetric)."""
    groups = []
    for x in points:
        for g in groups:
            if same_point(g[0], x, tol):
                g.append(x)
                break
        else:
            groups.append([x])
    return [x for g in groups for x in g]


def _quotient(num, den, tol):
    if isinstance(num, Series):
        try:
            return series_div(num, den, tol)
        except ArithmeticError as exc:  # PoleError would contradict polynomial structure
            raise InternalInvariantError(f"divided difference quotient is not holomorphic: {exc}") from exc
    return num / den


@dataclass(frozen=True)
class DividedDiffTable:
    """Points (after confluent grouping) and the rows ``table[j][i] = Delta^j P(x_i..x_{i+j})``."""

    points: tuple
    table: tuple

    @property
    def top(self):
        return self.table[-1][0]

    def newton_coefficients(self):
        return [row[0] for row in self.table]


def divdiff_table(P: Poly, points, tol: float = DEFAULT_TOL) -> DividedDiffTable:
    """Recursive divided-difference table with the confluent derivative rule."""
    sample = _sample(P, points)
    pts = [_lift(x, sample) for x in _group(list(points), tol)]
    m = len(pts)
    if m == 0:
        raise ValueError("divided differences need at least one point")
    row = [_lift(P(x), sample) for x in pts]
    table = [tuple(row)]
    derivs = {}
    for j in range(1, m):
        nxt = []
        for i in range(m - j):
            a, b = pts[i], pts[i + j]
            if same_point(a, b, tol):
                if j not in derivs:
                    derivs[j] = P.derivative(j)
                inv = exact(1) / factorial(j) if P.exact else 1 / factorial(j)
                nxt.append(_lift(derivs[j](a), sample) * inv)
            else:
                nxt.append(_quotient(row[i] - row[i + 1], a - b, tol))
        row = nxt
        table.append(tuple(row))
    return DividedDiffTable(tuple(pts), tuple(table))


def divdiff(P: Poly, points, tol: float = DEFAULT_TOL):
    """``Delta^m P(x_1, ..., x_{m+1})`` by the recursion.

    Points that are identical as series are confluent; points that merely
    coincide at the center are not and go through exact series division.
    """
    return divdiff_table(P, points, tol).top


def monomial_sums(points, max_degree: int):
    """``[h_0, ..., h_D]``: sums of all monomials of each degree in ``points`` (complete homogeneous).

    One depth-first walk over non-decreasing index tuples visits every
    monomial of degree ``<= D`` exactly once, each extending its prefix by one factor.
    """
    pts = list(points)
    sample = next((x for x in pts if isinstance(x, Series)), None)
    one = ONE
    if sample is not None:
        one = sample.like([ONE if sample.exact else 1 + 0j])
    elif any(isinstance(x, complex) for x in pts):
        one = 1 + 0j
    sums = [None] * (max_degree + 1)

    def walk(start, depth, prod):
        sums[depth] = prod if sums[depth] is None else sums[depth] + prod
        if depth == max_degree:
            return
        for i in range(start, len(pts)):
            walk(i, depth + 1, prod * pts[i])

    walk(0, 0, one)
    return sums


def divdiff_monomial_oracle(j: int, k: int, points):
    """``Delta^k t^j`` as the complete homogeneous sum of degree ``j - k`` in the points."""
    if k > j:
        raise ValueError("need k <= j")
    pts = list(points)
    if len(pts) != k + 1:
        raise ValueError(f"Delta^{k} takes {k + 1} points")
    return monomial_sums(pts, j - k)[j - k]


def synthetic_quotient(P: Poly, x):
    """``(P(t) - P(x)) / (t - x)`` and ``P(x)`` by Horner's scheme (no division)."""
    cs = P.coeffs
    if not cs:
        return Poly(), P._zero()
    out = [None] * (len(cs) - 1)
    acc = cs[-1]
    for j in range(len(cs) - 2, -1, -1):
        out[j] = acc
        acc = cs[j] + x * acc
    return Poly(out), acc


def divdiff_horner(P: Poly, points):
    """Division-free divided difference via repeated synthetic division.

    ``Delta^m P(x_1..x_{m+1}) = q_m(x_{m+1})`` with ``q_i`` the quotient of
    ``q_{i-1}`` by ``t - x_i``.  Keeps every known coefficient of series input.
    """
    pts = list(points)
    sample = _sample(P, pts)
    q = P
    for x in pts[:-1]:
        q, _ = synthetic_quotient(q, x)
    val = q(pts[-1]) if q.coeffs else P._zero()
    return _lift(val, sample)


def newton_expand(P: Poly, points, tol: float = DEFAULT_TOL) -> Poly:
    """Newton form of ``P`` at ``points``, rebuilt as a polynomial in ``t``.

    ``sum_{j<m} Delta^j P(x_1..x_{j+1}) prod_{i<=j}(t - x_i)`` plus the
    remainder ``Delta^m P(x_1..x_m, t) prod_{i<=m}(t - x_i)``, which is the
    constant leading coefficient when ``m = deg P`` and zero beyond.
    Coefficients come from synthetic division, so nearly confluent points
    cost no truncation.
    """
    pts = list(points)
    m = len(pts)
    if m == 0:
        return P
    sample = _sample(P, pts)
    pts = [_lift(x, sample) for x in pts]
    one = sample.like([ONE if sample.exact else 1 + 0j]) if sample is not None else (ONE if P.exact else 1 + 0j)
    coeffs = [divdiff_horner(P, pts[: j + 1]) for j in range(m)]
    rem = P
    for x in pts:
        rem, _ = synthetic_quotient(rem, x)
    result = rem
    for j in range(m - 1, -1, -1):
        result = result * Poly([-pts[j], one]) + Poly([coeffs[j]])
    return result


def required_order_met(value: Series, required: int, tol: float = DEFAULT_TOL) -> bool | None:
    """Does ``value`` vanish to order ``>= required``?  ``None`` if truncation cannot tell."""
    o = value.order(tol)
    if isinstance(o, AtLeast):
        return True if o.bound >= required else None
    return o >= required
