"""Univariate polynomials, Hermite interpolation and advisory root finding.

The coefficient ring is duck-typed: exact/float scalars for polynomials in
the disk variable, or :class:`~spectral_lift.series.Series` for polynomials
in the matrix indeterminate ``t`` whose coefficients depend on the disk
variable (for instance the characteristic polynomial of a map).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import DuplicateNode, NonContiguousJet, TrackMismatch
from .scalars import DEFAULT_TOL, ONE, ZERO, GaussQ, exact, is_zero, scalar_from_json, scalar_to_json
from .series import Series

_NEUTRAL = (int, Fraction)
try:
    from gmpy2 import mpq as _mpq

    _NEUTRAL = _NEUTRAL + (type(_mpq(0)),)
except ImportError:  # pragma: no cover
    pass


def _norm(c):
    if isinstance(c, _NEUTRAL):
        return exact(c)
    if isinstance(c, float):
        return complex(c)
    return c


def _exact_zero(c):
    if isinstance(c, GaussQ):
        return not c
    if isinstance(c, complex):
        return c == 0
    return False


class Poly:
    """Polynomial ``sum(coeffs[j] * x**j)`` with trailing exact zeros removed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_norm(c) for c in coeffs]
        while cs and _exact_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k, coeff=ONE):
        return cls([ZERO] * k + [coeff]) if isinstance(_norm(coeff), GaussQ) else cls([0j] * k + [coeff])

    @classmethod
    def from_roots(cls, roots):
        p = cls([ONE if all(isinstance(_norm(r), GaussQ) for r in roots) else 1 + 0j])
        for r in roots:
            p = p * cls([-_norm(r), 1])
        return p

    # -- basic structure --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else self._zero()

    def _zero(self):
        for c in self.coeffs:
            if isinstance(c, Series):
                return c.like([])
            if isinstance(c, complex):
                return 0j
        return ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        for c in self.coeffs:
            if isinstance(c, complex):
                return False
            if isinstance(c, Series):
                return c.exact
        return True

    def leading(self):
        return self.coeffs[-1]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            n = max(len(a), len(b))
            out = []
            for j in range(n):
                if j >= len(a):
                    out.append(b[j])
                elif j >= len(b):
                    out.append(a[j])
                else:
                    out.append(a[j] + b[j])
            return Poly(out)
        return self + Poly([other])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly()
            out = [None] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    t = x * y
                    out[i + j] = t if out[i + j] is None else out[i + j] + t
            return Poly(out)
        return Poly([c * other for c in self.coeffs])

    def __rmul__(self, other):
        if isinstance(other, Poly):
            return other.__mul__(self)
        return Poly([other * c for c in self.coeffs])

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly([ONE if self.exact else 1 + 0j])
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar or a series."""
        if not self.coeffs:
            return self._zero() if not isinstance(x, Series) else x.like([])
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> "Poly":
        """``k``-th derivative with respect to the indeterminate."""
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * j for j, c in enumerate(cs) if j > 0]
        return Poly(cs)

    def taylor_coefficients(self, a) -> list:
        """Coefficients of ``P(a + w)`` in powers of ``w`` (``P^(j)(a)/j!``)."""
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division by (x - a)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + a * cs[j + 1]
        return cs

    def shift(self, a) -> "Poly":
        return Poly(self.taylor_coefficients(a))

    def to_series(self, center, trunc: int | None = None) -> Series:
        """Expansion about ``center``; with ``trunc`` omitted every coefficient is kept."""
        cs = self.taylor_coefficients(_norm(center)) if self.coeffs else []
        if trunc is None:
            trunc = max(len(cs), 1)
        exact_track = self.exact and not isinstance(center, complex)
        return Series(cs, trunc, center, exact=exact_track)

    def monic(self) -> "Poly":
        lead = self.coeffs[-1]
        inv = lead.inverse() if isinstance(lead, GaussQ) else 1 / lead
        return Poly([c * inv for c in self.coeffs])

    def divmod(self, other: "Poly", tol: float | None = None):
        """Euclidean division over the scalar field."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        lead = b[-1]
        inv = lead.inverse() if isinstance(lead, GaussQ) else 1 / lead
        q = [ZERO if other.exact else 0j] * max(len(r) - len(b) + 1, 0)
        for k in range(len(r) - len(b), -1, -1):
            c = r[k + len(b) - 1] * inv
            q[k] = c
            for j, bj in enumerate(b):
                r[k + j] = r[k + j] - c * bj
        rem = r[: len(b) - 1]
        if tol is not None:
            rem = [0j if abs(x) <= tol else x for x in rem]
        return Poly(q), Poly(rem)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def agrees(self, other: "Poly", tol: float = DEFAULT_TOL) -> bool:
        """Coefficientwise equality; series coefficients compare up to truncation."""
        n = max(len(self.coeffs), len(other.coeffs))
        for j in range(n):
            a, b = self[j], other[j]
            if isinstance(a, Series) or isinstance(b, Series):
                s = a if isinstance(a, Series) else b
                a = a if isinstance(a, Series) else s.like([a])
                b = b if isinstance(b, Series) else s.like([b])
                if not a.agrees(b, tol):
                    return False
            elif not is_zero(a - b, tol):
                return False
        return True

    def to_float(self) -> "Poly":
        return Poly([c.to_float() if isinstance(c, Series) else complex(c) for c in self.coeffs])

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"({c})*x^{j}" if j else f"({c})" for j, c in enumerate(self.coeffs)]
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the Gaussian rationals (exact track only)."""
    if not (a.exact and b.exact):
        raise TrackMismatch("exact gcd requires exact polynomials")
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def poly_eval_series(P: Poly, x) -> Series:
    """Composition ``P(x)`` truncated like its operands; always returns a series."""
    val = P(x)
    if isinstance(val, Series):
        return val
    if isinstance(x, Series):
        return x.like([val])
    for c in P.coeffs:
        if isinstance(c, Series):
            return c.like([val])
    raise TypeError("poly_eval_series needs a series argument or series coefficients")


def poly_roots(P: Poly, polish: int = 3):
    """Float roots from the companion-matrix eigenvalues, refined by Newton steps.

    Advisory only.  Returns ``(roots, residual)`` where ``residual`` is the
    largest ``|P(r)|`` relative to the coefficient norm.
    """
    if P.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    c = np.array([complex(x) for x in P.coeffs])
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    n = len(c) - 1
    if n == 0:
        return [], 0.0
    monic = c / c[-1]
    comp = np.zeros((n, n), dtype=complex)
    if n > 1:
        comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -monic[:-1]
    roots = list(np.linalg.eigvals(comp))
    dc = np.array([k * c[k] for k in range(1, n + 1)])
    for _ in range(polish):
        refined = []
        for r in roots:
            fv = np.polyval(c[::-1], r)
            dv = np.polyval(dc[::-1], r)
            step = fv / dv if dv != 0 else 0
            cand = r - step
            if abs(np.polyval(c[::-1], cand)) <= abs(fv):
                r = cand
            refined.append(complex(r))
        roots = refined
    scale = float(np.max(np.abs(c)))
    residual = max(abs(np.polyval(c[::-1], r)) for r in roots) / scale
    return [complex(r) for r in roots], float(residual)


# -- Hermite interpolation ------------------------------------------------------

@dataclass(frozen=True)
class JetConstraint:
    """Prescribed ``order``-th derivative of one function at one node."""

    node: object
    function: str
    order: int
    value: object

    def to_json(self):
        return {
            "node": scalar_to_json(self.node),
            "function": self.function,
            "order": self.order,
            "value": scalar_to_json(self.value),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(scalar_from_json(obj["node"]), obj["function"], int(obj["order"]), scalar_from_json(obj["value"]))


def hermite_interpolate(constraints) -> Poly:
    """Minimal-degree polynomial matching every prescribed value and derivative.

    Uses the confluent divided-difference table: a node repeated ``m+1``
    times contributes ``f^(j)(node)/j!`` on its confluent diagonals.
    """
    constraints = list(constraints)
    if not constraints:
        return Poly()
    functions = {c.function for c in constraints}
    if len(functions) > 1:
        raise ValueError(f"constraints mix functions {sorted(functions)}")
    exact_track = all(
        not isinstance(_norm(c.node), complex) and not isinstance(_norm(c.value), complex) for c in constraints
    )
    conv = exact if exact_track else complex

    jets: dict = {}
    order_of_nodes = []
    for c in constraints:
        node = conv(c.node)
        if c.order < 0:
            raise NonContiguousJet(f"negative derivative order {c.order}")
        per = jets.setdefault(node, {})
        if node not in order_of_nodes:
            order_of_nodes.append(node)
        if c.order in per:
            raise DuplicateNode(f"two constraints for derivative {c.order} at node {node}")
        per[c.order] = conv(c.value)
    zs, vals = [], []
    for node in order_of_nodes:
        per = jets[node]
        top = max(per)
        if set(per) != set(range(top + 1)):
            raise NonContiguousJet(f"node {node} prescribes derivatives {sorted(per)}")
        for j in range(top + 1):
            zs.append(node)
            vals.append(per)

    m = len(zs)
    prev = [vals[i][0] for i in range(m)]
    newton = [prev[0]]
    for j in range(1, m):
        cur = [None] * m
        for i in range(j, m):
            if zs[i] == zs[i - j]:
                cur[i] = vals[i][j] / factorial(j)
            else:
                cur[i] = (prev[i] - prev[i - 1]) / (zs[i] - zs[i - j])
        newton.append(cur[j])
        prev = cur
    return _newton_to_poly(newton, zs, exact_track)


def _newton_to_poly(newton, zs, exact_track):
    one = ONE if exact_track else 1 + 0j
    p = Poly([newton[-1]])
    for i in range(len(newton) - 2, -1, -1):
        p = p * Poly([-zs[i], one]) + Poly([newton[i]])
    return p


def poly_to_json(p: Poly):
    return [scalar_to_json(c) for c in p.coeffs]


def poly_from_json(obj) -> Poly:
    return Poly([scalar_from_json(c) for c in obj])
