"""Truncated power series in the disk variable around a center.

A :class:`Series` stores the coefficients of ``(z - center)**j`` for
``j < trunc``; coefficients with index ``>= trunc`` are unknown.  Every
operation carries the truncation forward pessimistically, so a series never
claims a coefficient the arithmetic could not know.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import PoleError, TrackMismatch, TruncationTooSmall
from .scalars import DEFAULT_TOL, ONE, ZERO, GaussQ, _new, exact

_ZQ = ZERO.re

_SCALAR_TYPES = (GaussQ, int, Fraction, complex, float)
try:  # mpq is track-neutral like Fraction
    from gmpy2 import mpq as _mpq

    _SCALAR_TYPES = _SCALAR_TYPES + (type(_mpq(0)),)
except ImportError:  # pragma: no cover
    pass


@dataclass(frozen=True)
class AtLeast:
    """Order sentinel: every known coefficient vanishes, so the order is ``>= bound``."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


def certifies(order, required: int) -> bool | None:
    """Does ``order`` prove vanishing to order ``required``?

    Returns ``None`` when the sentinel bound is too small to decide.
    """
    if isinstance(order, AtLeast):
        return True if order.bound >= required else None
    return order >= required


def order_to_json(order):
    return str(order) if isinstance(order, AtLeast) else order


def _is_scalar(x):
    return isinstance(x, _SCALAR_TYPES)


def _mk(center, coeffs, trunc, is_exact):
    s = object.__new__(Series)
    if is_exact:
        while coeffs and not (coeffs[-1].re or coeffs[-1].im):
            coeffs.pop()
    else:
        while coeffs and coeffs[-1] == 0j:
            coeffs.pop()
    if len(coeffs) > trunc:
        del coeffs[trunc:]
    s.center = center
    s.coeffs = tuple(coeffs)
    s.trunc = trunc
    s.exact = is_exact
    return s


class Series:
    """Immutable truncated power series.

    Parameters
    ----------
    coeffs
        Coefficients of ``(z - center)**j``; missing trailing entries are zero.
    trunc
        Number of known coefficients (``K``).
    center
        Expansion point (the node).
    exact
        Track override; inferred from the data when omitted.
    """

    __slots__ = ("center", "coeffs", "trunc", "exact")

    def __init__(self, coeffs, trunc: int, center=0, exact=None):
        if trunc < 1:
            raise ValueError("truncation must be a positive integer")
        coeffs = list(coeffs)
        if exact is None:
            exact = not any(isinstance(c, (complex, float)) for c in coeffs + [center])
        if exact:
            coeffs = [_exact(c) for c in coeffs]
            center = _exact(center)
        else:
            coeffs = [complex(c) for c in coeffs]
            center = complex(center)
        trimmed = _mk(center, coeffs, trunc, exact)
        self.center = trimmed.center
        self.coeffs = trimmed.coeffs
        self.trunc = trunc
        self.exact = exact

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, value, trunc, center=0, exact=None):
        return cls([value], trunc, center, exact)

    @classmethod
    def variable(cls, trunc, center=0, exact=None):
        """The series of ``z`` itself: ``center + (z - center)``."""
        return cls([center, 1], trunc, center, exact)

    def like(self, coeffs, trunc=None):
        """A series on the same center and track."""
        return Series(coeffs, self.trunc if trunc is None else trunc, self.center, self.exact)

    @property
    def zero(self):
        return ZERO if self.exact else 0j

    # -- access ---------------------------------------------------------
    def __getitem__(self, j):
        if j < 0:
            raise IndexError(j)
        if j >= self.trunc:
            raise TruncationTooSmall(f"coefficient {j} is beyond truncation {self.trunc}")
        return self.coeffs[j] if j < len(self.coeffs) else self.zero

    def __len__(self):
        return self.trunc

    def known(self):
        """All ``trunc`` known coefficients, zero padded."""
        return list(self.coeffs) + [self.zero] * (self.trunc - len(self.coeffs))

    def order(self, tol: float = DEFAULT_TOL):
        """Order of vanishing at the center, or :class:`AtLeast` if none is visible."""
        if self.exact:
            for j, c in enumerate(self.coeffs):
                if c:
                    return j
        else:
            if tol <= 0:
                raise ValueError("float track requires a positive tolerance")
            for j, c in enumerate(self.coeffs):
                if abs(c) > tol:
                    return j
        return AtLeast(self.trunc)

    def is_known_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return isinstance(self.order(tol), AtLeast)

    def value(self):
        """Value at the center."""
        return self[0]

    def __call__(self, z):
        """Evaluate the known part at ``z`` (exact only if the germ is a polynomial of degree < trunc)."""
        w = z - self.center
        acc = self.zero
        for c in reversed(self.coeffs):
            acc = acc * w + c
        return acc

    # -- track handling -------------------------------------------------
    def to_float(self):
        if not self.exact:
            return self
        return _mk(complex(self.center), [complex(c) for c in self.coeffs], self.trunc, False)

    def truncate(self, trunc: int):
        if trunc > self.trunc:
            raise TruncationTooSmall("cannot raise the truncation of a series")
        return _mk(self.center, list(self.coeffs[:trunc]), trunc, self.exact)

    def with_trunc(self, trunc: int):
        """Reinterpret the known coefficients with another truncation.

        Raising the truncation asserts the germ is a polynomial whose
        coefficients are all stored; use only for polynomial data.
        """
        return _mk(self.center, list(self.coeffs[:trunc]), trunc, self.exact)

    def _coerce_scalar(self, x):
        if self.exact:
            if isinstance(x, (complex, float)):
                raise TrackMismatch("floating scalar combined with an exact series")
            return _exact(x)
        if isinstance(x, GaussQ):
            raise TrackMismatch("exact scalar combined with a floating series")
        return complex(x)

    def _check(self, other: "Series"):
        if self.exact != other.exact:
            raise TrackMismatch("exact and floating series cannot be mixed")
        if self.center != other.center:
            raise ValueError(f"series centers differ: {self.center} vs {other.center}")

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Series):
            self._check(other)
            trunc = min(self.trunc, other.trunc)
            a, b = self.coeffs, other.coeffs
            n = min(max(len(a), len(b)), trunc)
            if self.exact:

                if len(a) < len(b):
                    a, b = b, a
                out = [_new(x.re + y.re, x.im + y.im) for x, y in zip(a[:n], b[:n])]
                out.extend(a[len(out):n])
                return _mk(self.center, out, trunc, True)
            z = self.zero
            out = [(a[j] if j < len(a) else z) + (b[j] if j < len(b) else z) for j in range(n)]
            return _mk(self.center, out, trunc, self.exact)
        if _is_scalar(other):
            c = self._coerce_scalar(other)
            out = list(self.coeffs) or [self.zero]
            out[0] = out[0] + c
            return _mk(self.center, out, self.trunc, self.exact)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _mk(self.center, [-c for c in self.coeffs], self.trunc, self.exact)

    def __sub__(self, other):
        if isinstance(other, Series) or _is_scalar(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if _is_scalar(other):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Series):
            self._check(other)
            trunc = min(self.trunc, other.trunc)
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return _mk(self.center, [], trunc, self.exact)
            la, lb = len(a), len(b)
            n = min(la + lb - 1, trunc)
            if self.exact:
                return _mk(self.center, _exact_convolve(a, b, n), trunc, True)
            out = []
            for k in range(n):
                lo = max(0, k - lb + 1)
                hi = min(k, la - 1)
                acc = a[lo] * b[k - lo]
                for i in range(lo + 1, hi + 1):
                    acc = acc + a[i] * b[k - i]
                out.append(acc)
            return _mk(self.center, out, trunc, self.exact)
        if _is_scalar(other):
            c = self._coerce_scalar(other)
            return _mk(self.center, [x * c for x in self.coeffs], self.trunc, self.exact)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return series_div(self, other)
        if _is_scalar(other):
            c = self._coerce_scalar(other)
            return self * (1 / c if not self.exact else c.inverse())
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return series_div(self.like([other]), self)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.like([ONE if self.exact else 1 + 0j])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self):
        """Derivative in the disk variable; loses one known coefficient."""
        if self.trunc < 2:
            raise TruncationTooSmall("derivative of a series with one known coefficient")
        out = [c * j for j, c in enumerate(self.coeffs) if j > 0]
        return _mk(self.center, out, self.trunc - 1, self.exact)

    def scale_variable(self, eps):
        """Coefficients of ``s(center + eps*(z - center))``."""
        e = self._coerce_scalar(eps)
        out, p = [], (ONE if self.exact else 1 + 0j)
        for c in self.coeffs:
            out.append(c * p)
            p = p * e
        return _mk(self.center, out, self.trunc, self.exact)

    # -- comparison -----------------------------------------------------
    def agrees(self, other, tol: float = DEFAULT_TOL, upto: int | None = None) -> bool:
        """Equality of the commonly known coefficients (exact, or within ``tol``)."""
        if not isinstance(other, Series):
            other = self.like([other])
        self._check(other)
        n = min(self.trunc, other.trunc)
        if upto is not None:
            n = min(n, upto)
        for j in range(n):
            d = self[j] - other[j]
            if self.exact:
                if d:
                    return False
            elif abs(d) > tol:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.exact == other.exact
            and self.center == other.center
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.trunc))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if (self.exact and not c) or (not self.exact and c == 0):
                continue
            var = "w" if j == 1 else f"w^{j}"
            terms.append(str(c) if j == 0 else f"({c})*{var}")
        body = " + ".join(terms) or "0"
        return f"Series({body} + O(w^{self.trunc}), w=z-{self.center})"


def _exact_convolve(a, b, n):
    """First ``n`` coefficients of ``a * b`` on the rational parts directly (no per-term scalar objects)."""

    ar = [c.re for c in a]
    br = [c.re for c in b]
    real = not any(c.im for c in a) and not any(c.im for c in b)
    ai = None if real else [c.im for c in a]
    bi = None if real else [c.im for c in b]
    la, lb = len(a), len(b)
    out = []
    for k in range(n):
        lo = max(0, k - lb + 1)
        hi = min(k, la - 1)
        if real:
            sr = ar[lo] * br[k - lo]
            for i in range(lo + 1, hi + 1):
                sr += ar[i] * br[k - i]
            out.append(_new(sr, _ZQ))
        else:
            sr = ar[lo] * br[k - lo] - ai[lo] * bi[k - lo]
            si = ar[lo] * bi[k - lo] + ai[lo] * br[k - lo]
            for i in range(lo + 1, hi + 1):
                j = k - i
                sr += ar[i] * br[j] - ai[i] * bi[j]
                si += ar[i] * bi[j] + ai[i] * br[j]
            out.append(_new(sr, si))
    return out


def _exact_divide(n, d, trunc):
    """Power-series long division on the rational parts; ``d[0]`` is a unit."""

    nr, ni = [c.re for c in n], [c.im for c in n]
    dr, di = [c.re for c in d], [c.im for c in d]
    norm = dr[0] * dr[0] + di[0] * di[0]
    vr, vi = dr[0] / norm, -di[0] / norm  # 1 / d[0]
    orr, oi = [], []
    for j in range(trunc):
        ar, ai = nr[j], ni[j]
        for i in range(1, j + 1):
            br, bi = orr[j - i], oi[j - i]
            ar = ar - (dr[i] * br - di[i] * bi)
            ai = ai - (dr[i] * bi + di[i] * br)
        orr.append(ar * vr - ai * vi)
        oi.append(ar * vi + ai * vr)
    return [_new(a, b) for a, b in zip(orr, oi)]


def _exact(x):
    return exact(x)


def series_order(s: Series, tol: float = DEFAULT_TOL):
    """Least index of a nonzero coefficient; :class:`AtLeast` when none is known."""
    return s.order(tol)


def series_div(num: Series, den: Series, tol: float = DEFAULT_TOL) -> Series:
    """Quotient ``q`` with ``num = den*q``, known to ``min(trunc) - order(den)`` terms.

    Raises :class:`PoleError` if ``num`` vanishes to lower order than ``den``.
    """
    num._check(den)
    p = den.order(tol)
    if isinstance(p, AtLeast):
        raise TruncationTooSmall("denominator vanishes to every known order")
    q = num.order(tol)
    if isinstance(q, AtLeast):
        if q.bound < p:
            raise TruncationTooSmall("numerator is not known to the order of the denominator")
    elif q < p:
        raise PoleError(f"numerator has order {q} < denominator order {p}")
    trunc = min(num.trunc, den.trunc) - p
    if trunc < 1:
        raise TruncationTooSmall("no coefficients of the quotient are known")
    n = num.known()[p : p + trunc]
    d = den.known()[p : p + trunc]
    if num.exact:
        return _mk(num.center, _exact_divide(n, d, trunc), trunc, True)
    inv = 1 / d[0]
    out = []
    for j in range(trunc):
        acc = n[j]
        for i in range(1, j + 1):
            acc = acc - d[i] * out[j - i]
        out.append(acc * inv)
    return _mk(num.center, out, trunc, num.exact)


def series_exp(s: Series) -> Series:
    """``exp`` of a floating series (transcendental, so float track only)."""
    if s.exact:
        raise TrackMismatch("series_exp is only available on the float track")
    c = s.known()
    e0 = cmath.exp(c[0])
    out = [e0]
    for k in range(1, s.trunc):
        acc = 0j
        for j in range(1, k + 1):
            acc += j * c[j] * out[k - j]
        out.append(acc / k)
    return _mk(s.center, out, s.trunc, False)


# -- JSON -----------------------------------------------------------------

def series_to_json(s: Series):
    from .scalars import scalar_to_json

    return {
        "center": scalar_to_json(s.center),
        "coeffs": [scalar_to_json(c) for c in s.coeffs],
        "trunc": s.trunc,
    }


def series_from_json(obj) -> Series:
    from .scalars import scalar_from_json

    if set(obj) != {"center", "coeffs", "trunc"}:
        raise ValueError(f"not a serialized series: {sorted(obj)}")
    coeffs = [scalar_from_json(c) for c in obj["coeffs"]]
    center = scalar_from_json(obj["center"])
    return Series(coeffs, int(obj["trunc"]), center)
