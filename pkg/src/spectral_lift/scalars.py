"""Scalars on two tracks: exact Gaussian rationals and complex doubles.

Exact values are :class:`GaussQ` instances, pairs of ``gmpy2.mpq`` rationals
which are always reduced with a positive denominator.  Floating values are
plain Python ``complex``.  Python ``int`` and ``fractions.Fraction`` are
track-neutral and promote to whichever track they meet.  Combining a
``GaussQ`` with a ``float``/``complex`` raises :class:`TrackMismatch`.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from .errors import TrackMismatch

DEFAULT_TOL = 1e-9

_MPQ = type(mpq(0))


def _to_mpq(x):
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (float, complex)):
        raise TrackMismatch(f"cannot build an exact scalar from {x!r}")
    if isinstance(x, (int, Fraction, str)):
        return mpq(x)
    raise TypeError(f"cannot build an exact scalar from {type(x).__name__}")


def _new(re, im):
    z = object.__new__(GaussQ)
    z.re = re
    z.im = im
    return z


class GaussQ:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussQ):
            if im != 0:
                raise TypeError("GaussQ(GaussQ, im) is ambiguous")
            self.re, self.im = re.re, re.im
            return
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    # -- coercion -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussQ):
            return other
        if isinstance(other, int):
            return _new(mpq(other), _ZERO_Q)
        if isinstance(other, (_MPQ, Fraction)):
            return _new(_to_mpq(other), _ZERO_Q)
        if isinstance(other, (float, complex)):
            raise TrackMismatch("exact and floating scalars cannot be mixed")
        return None

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = GaussQ._coerce(other)
        if o is None:
            return NotImplemented
        return _new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussQ._coerce(other)
        if o is None:
            return NotImplemented
        return _new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussQ._coerce(other)
        if o is None:
            return NotImplemented
        return _new(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = GaussQ._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return _new(a * c, _ZERO_Q)
        return _new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussQ._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = GaussQ._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("division by exact zero")
            return _new(1 / a, _ZERO_Q)
        n = a * a + b * b
        return _new(a / n, -b / n)

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return _new(self.re, -self.im)

    def abs2(self):
        """Exact squared modulus as an ``mpq``."""
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return abs(complex(self))

    # -- comparison / conversion ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return False
        o = GaussQ._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussQ({_fmt(self.re)!r}, {_fmt(self.im)!r})"

    def __str__(self):
        if not self.im:
            return _fmt(self.re)
        if not self.re:
            return f"{_fmt(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{_fmt(self.re)}{sign}{_fmt(abs(self.im))}i"

    def __reduce__(self):
        return (GaussQ, (_fmt(self.re), _fmt(self.im)))


def _fmt(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_ZERO_Q = mpq(0)
ZERO = _new(mpq(0), mpq(0))
ONE = _new(mpq(1), mpq(0))
I = _new(mpq(0), mpq(1))


def gq(re=0, im=0) -> GaussQ:
    """Shorthand constructor accepting ints, Fractions or strings like ``"1/2"``."""
    return GaussQ(re, im)


def is_exact(x) -> bool:
    return isinstance(x, (GaussQ, int, Fraction, _MPQ))


def is_float(x) -> bool:
    return isinstance(x, (float, complex))


def exact(x) -> GaussQ:
    """Coerce a track-neutral or exact value to ``GaussQ``."""
    if isinstance(x, GaussQ):
        return x
    if isinstance(x, complex):
        raise TrackMismatch(f"{x!r} is a floating value")
    return GaussQ(x)


def to_float(x) -> complex:
    return complex(x)


def coerce(x, exact_track: bool):
    """Bring ``x`` onto the requested track (ints and rationals only move to float)."""
    if exact_track:
        return exact(x)
    return complex(x)


def is_zero(x, tol: float = DEFAULT_TOL) -> bool:
    """Exact test on the exact track, modulus test against ``tol`` otherwise."""
    if isinstance(x, GaussQ):
        return not x
    if isinstance(x, (int, Fraction, _MPQ)):
        return x == 0
    return abs(x) <= tol


def rationalize(z: complex, max_den: int = 10**6) -> GaussQ:
    """Nearest Gaussian rational with bounded denominators (a candidate only)."""
    re = Fraction(z.real).limit_denominator(max_den)
    im = Fraction(z.imag).limit_denominator(max_den)
    return GaussQ(re, im)


def track_of(values) -> str:
    """Return ``"exact"`` or ``"float"`` for an iterable of scalars.

    Raises :class:`TrackMismatch` when both tracks appear.
    """
    seen_exact = seen_float = False
    for v in values:
        if isinstance(v, GaussQ):
            seen_exact = True
        elif isinstance(v, (float, complex)):
            seen_float = True
    if seen_exact and seen_float:
        raise TrackMismatch("values from both tracks")
    return "float" if seen_float else "exact"


# -- JSON -----------------------------------------------------------------

def scalar_to_json(x):
    if isinstance(x, (float, complex)):
        z = complex(x)
        return {"re": z.real, "im": z.imag}
    g = exact(x)
    return {
        "re": [str(g.re.numerator), str(g.re.denominator)],
        "im": [str(g.im.numerator), str(g.im.denominator)],
    }


def scalar_from_json(obj):
    """Inverse of :func:`scalar_to_json`.

    Also accepts plain ints and rational strings like ``"1/2"`` for
    hand-written problem files.
    """
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, int):
        return GaussQ(obj)
    if isinstance(obj, str):
        return GaussQ(Fraction(obj))
    if isinstance(obj, float):
        return complex(obj)
    if isinstance(obj, dict) and set(obj) == {"re", "im"}:
        re, im = obj["re"], obj["im"]
        if isinstance(re, list) and isinstance(im, list):
            return GaussQ(Fraction(int(re[0]), int(re[1])), Fraction(int(im[0]), int(im[1])))
        if isinstance(re, (int, float)) and isinstance(im, (int, float)):
            return complex(re, im)
    raise ValueError(f"not a serialized scalar: {obj!r}")
