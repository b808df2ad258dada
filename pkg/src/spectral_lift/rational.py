"""Rational functions of the disk variable, used for multi-node liftings."""

from __future__ import annotations

from .matrix import Matrix
from .poly import Poly, poly_from_json, poly_roots, poly_to_json
from .scalars import ONE, exact
from .series import series_div


class RationalFunction:
    """``num / den`` with polynomial numerator and denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        self.num = num
        self.den = den if den is not None else Poly([ONE if num.exact else 1 + 0j])
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    @property
    def exact(self) -> bool:
        return self.num.exact and self.den.exact

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def to_series(self, center, trunc: int):
        num, den = self.num, self.den
        if isinstance(center, complex):
            num, den = num.to_float(), den.to_float()
        n = num.to_series(center, trunc) if num.coeffs else None
        d = den.to_series(center, trunc)
        if n is None:
            return d.like([])
        return series_div(n, d)

    def poles(self):
        """Advisory roots of the denominator."""
        if self.den.degree < 1:
            return []
        return poly_roots(self.den)[0]

    def to_json(self):
        return {"num": poly_to_json(self.num), "den": poly_to_json(self.den)}

    @classmethod
    def from_json(cls, obj):
        return cls(poly_from_json(obj["num"]), poly_from_json(obj["den"]))

    def __repr__(self):
        return f"RationalFunction({self.num!r} / {self.den!r})"


class RationalMatrix:
    """Square matrix of :class:`RationalFunction` entries."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        self.rows = tuple(tuple(x if isinstance(x, RationalFunction) else RationalFunction(x) for x in r) for r in rows)
        self.n = len(self.rows)

    @property
    def exact(self) -> bool:
        return all(x.exact for r in self.rows for x in r)

    def evaluate(self, z) -> Matrix:
        if self.exact and not isinstance(z, complex):
            z = exact(z)
        else:
            z = complex(z)
        vals = []
        for r in self.rows:
            row = []
            for x in r:
                v = x(z)
                row.append(complex(v) if isinstance(z, complex) else v)
            vals.append(row)
        return Matrix(vals)

    def to_series(self, center, trunc: int) -> Matrix:
        return Matrix([[x.to_series(center, trunc) for x in r] for r in self.rows])

    def poles(self):
        out = []
        for r in self.rows:
            for x in r:
                out.extend(x.poles())
        return out

    def to_json(self):
        return {"n": self.n, "entries": [[x.to_json() for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj):
        return cls([[RationalFunction.from_json(x) for x in r] for r in obj["entries"]])
