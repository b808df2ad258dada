"""Dense square matrices over scalars or truncated series.

One class serves both roles the rest of the package needs: constant
matrices (exact ``GaussQ`` or ``complex`` entries) and matrix-valued germs
(entries are :class:`~spectral_lift.series.Series` sharing a center and a
truncation).
"""

from __future__ import annotations

from .errors import SingularMatrix, TrackMismatch
from .scalars import DEFAULT_TOL, ONE, ZERO, GaussQ, exact, is_zero, scalar_from_json, scalar_to_json
from .series import Series, series_from_json, series_to_json

MAX_DIM = 8


def zero_like(x):
    if isinstance(x, Series):
        return x.like([])
    if isinstance(x, complex):
        return 0j
    return ZERO


def one_like(x):
    if isinstance(x, Series):
        return x.like([ONE if x.exact else 1 + 0j])
    if isinstance(x, complex):
        return 1 + 0j
    return ONE


def _norm(x):
    if isinstance(x, (Series, GaussQ, complex)):
        return x
    if isinstance(x, float):
        return complex(x)
    return exact(x)


class Matrix:
    """Immutable ``n x n`` matrix; rows are tuples of entries."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        rows = tuple(tuple(_norm(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self.n = n

    @classmethod
    def _raw(cls, rows):
        m = object.__new__(cls)
        m.rows = rows
        m.n = len(rows)
        return m

    @classmethod
    def identity(cls, n, like=ONE):
        one, zero = one_like(like), zero_like(like)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n, like=ONE):
        zero = zero_like(like)
        return cls._raw(tuple((zero,) * n for _ in range(n)))

    @classmethod
    def from_columns(cls, cols):
        n = len(cols)
        return cls([[cols[j][i] for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values):
        n = len(values)
        sample = _norm(values[0]) if n else ONE
        zero = zero_like(sample)
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)])

    # -- structure --------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def entries(self):
        for r in self.rows:
            yield from r

    @property
    def is_series(self) -> bool:
        return any(isinstance(x, Series) for x in self.entries())

    @property
    def exact(self) -> bool:
        for x in self.entries():
            if isinstance(x, complex):
                return False
            if isinstance(x, Series):
                return x.exact
        return True

    @property
    def sample(self):
        """A representative entry, used to build ring constants of the right kind."""
        for x in self.entries():
            if isinstance(x, Series):
                return x
        for x in self.entries():
            return x
        return ONE

    def map(self, fn):
        return Matrix([[fn(x) for x in r] for r in self.rows])

    def to_float(self):
        return self.map(lambda x: x.to_float() if isinstance(x, Series) else complex(x))

    def evaluate(self, z):
        """Evaluate series entries at ``z`` (scalar entries pass through)."""
        return self.map(lambda x: x(z) if isinstance(x, Series) else x)

    def value(self):
        """Entries at the series center."""
        return self.map(lambda x: x.value() if isinstance(x, Series) else x)

    def transpose(self):
        return Matrix._raw(tuple(zip(*self.rows)))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return Matrix._raw(tuple(tuple(a * c for a in r) for r in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        series_like = self.sample if self.is_series else (other.sample if other.is_series else None)
        zero = zero_like(series_like if series_like is not None else self.sample)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = zero
                for a, b in zip(r, col):
                    if isinstance(a, GaussQ) and not a:
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix._raw(tuple(out))

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.n):
            acc = acc + self.rows[i][i]
        return acc

    # -- exact linear algebra over the scalar field -------------------------
    def _require_scalar(self):
        if self.is_series:
            raise TypeError("operation needs a constant matrix")

    def inverse(self, tol: float = DEFAULT_TOL):
        """Gauss-Jordan inverse (exact pivots on the exact track, partial pivoting on floats)."""
        self._require_scalar()
        n = self.n
        ex = self.exact
        one, zero = (ONE, ZERO) if ex else (1 + 0j, 0j)
        a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            if ex:
                piv = next((r for r in range(col, n) if a[r][col]), None)
            else:
                piv = max(range(col, n), key=lambda r: abs(a[r][col]))
                if abs(a[piv][col]) <= tol:
                    piv = None
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse() if ex else 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col:
                    f = a[r][col]
                    if (ex and f) or (not ex and f != 0):
                        a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return Matrix._raw(tuple(tuple(r[n:]) for r in a))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def agrees(self, other: "Matrix", tol: float = DEFAULT_TOL) -> bool:
        """Entrywise equality (series up to common truncation, floats within ``tol``)."""
        if self.n != other.n:
            return False
        for a, b in zip(self.entries(), other.entries()):
            if isinstance(a, Series) or isinstance(b, Series):
                s = a if isinstance(a, Series) else b
                a = a if isinstance(a, Series) else s.like([a])
                b = b if isinstance(b, Series) else s.like([b])
                if a.exact != b.exact:
                    a, b = a.to_float(), b.to_float()
                if not a.agrees(b, tol):
                    return False
            else:
                if isinstance(a, GaussQ) and isinstance(b, GaussQ):
                    if a != b:
                        return False
                elif not is_zero(complex(a) - complex(b), tol):
                    return False
        return True

    def __repr__(self):
        body = ",\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"


def krylov_rank(vectors, exact_track=True, tol: float = DEFAULT_TOL) -> int:
    """Rank of a list of equal-length vectors by Gaussian elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    m = len(rows[0])
    rank = 0
    for col in range(m):
        if exact_track:
            piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        else:
            cand = [r for r in range(rank, len(rows)) if abs(rows[r][col]) > tol]
            piv = max(cand, key=lambda r: abs(rows[r][col])) if cand else None
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        inv = p.inverse() if exact_track else 1 / p
        for r in range(rank + 1, len(rows)):
            f = rows[r][col] * inv
            if (exact_track and f) or (not exact_track and f != 0):
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# -- JSON -------------------------------------------------------------------

def matrix_to_json(m: Matrix):
    def enc(x):
        return series_to_json(x) if isinstance(x, Series) else scalar_to_json(x)

    return {"n": m.n, "entries": [[enc(x) for x in r] for r in m.rows]}


def matrix_from_json(obj) -> Matrix:
    def dec(x):
        if isinstance(x, dict) and "coeffs" in x:
            return series_from_json(x)
        return scalar_from_json(x)

    m = Matrix([[dec(x) for x in r] for r in obj["entries"]])
    if m.n != int(obj["n"]):
        raise ValueError("declared dimension does not match the entries")
    if m.n > MAX_DIM:
        raise ValueError(f"dimension {m.n} exceeds the supported maximum {MAX_DIM}")
    kinds = {isinstance(x, complex) for x in m.entries() if not isinstance(x, Series)}
    if len(kinds) > 1:
        raise TrackMismatch("matrix mixes exact and floating entries")
    return m
