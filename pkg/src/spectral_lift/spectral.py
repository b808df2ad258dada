"""The coefficient map onto the symmetrized polydisc and companion lifts.

Sign convention: ``det(t I - A) = sum_j (-1)**j * sigma_j(A) * t**(n-j)``,
so ``sigma_1`` is the trace and ``sigma_n`` the determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .matrix import MAX_DIM, Matrix, krylov_rank, one_like, zero_like
from .poly import Poly, poly_roots
from .scalars import DEFAULT_TOL, GaussQ, scalar_from_json, scalar_to_json
from .series import Series, series_from_json, series_to_json


@dataclass(frozen=True)
class SigmaVector:
    """A point ``(sigma_1, ..., sigma_n)`` of C^n, or a germ of one when entries are series."""

    components: tuple

    def __init__(self, components):
        object.__setattr__(self, "components", tuple(components))

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    @property
    def n(self):
        return len(self.components)

    def agrees(self, other, tol: float = DEFAULT_TOL) -> bool:
        if len(self) != len(other):
            return False
        for a, b in zip(self, other):
            if isinstance(a, Series) or isinstance(b, Series):
                s = a if isinstance(a, Series) else b
                a = a if isinstance(a, Series) else s.like([a])
                b = b if isinstance(b, Series) else s.like([b])
                if not a.agrees(b, tol):
                    return False
            elif isinstance(a, GaussQ) and isinstance(b, GaussQ):
                if a != b:
                    return False
            elif abs(complex(a) - complex(b)) > tol:
                return False
        return True

    def to_json(self):
        enc = lambda x: series_to_json(x) if isinstance(x, Series) else scalar_to_json(x)  # noqa: E731
        return {"sigma": [enc(x) for x in self.components]}

    @classmethod
    def from_json(cls, obj):
        dec = lambda x: series_from_json(x) if isinstance(x, dict) and "coeffs" in x else scalar_from_json(x)  # noqa: E731
        return cls([dec(x) for x in obj["sigma"]])


def char_poly(M: Matrix, limit: int = MAX_DIM) -> Poly:
    """``det(t I - M)`` by the Faddeev-LeVerrier recurrence.

    Works over any ring containing the rationals, so series-valued matrices
    get series-valued coefficients; division by ``k`` is exact on both tracks.
    """
    n = M.n
    if n > limit:
        raise ValueError(f"dimension {n} exceeds the supported maximum {limit}")
    like = M.sample
    exact_track = M.exact
    one = one_like(like)
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    ident = Matrix.identity(n, like)
    Mk = ident
    for k in range(1, n + 1):
        AM = M @ Mk
        inv_k = GaussQ(Fraction(1, k)) if exact_track else 1.0 / k
        c = -(AM.trace() * inv_k)
        coeffs[n - k] = c
        if k < n:
            Mk = AM + ident * c
    return Poly(coeffs)


def pi_map(M: Matrix) -> SigmaVector:
    """Elementary symmetric functions of the eigenvalues of ``M``."""
    P = char_poly(M)
    n = M.n
    return SigmaVector([P[n - j] if j % 2 == 0 else -P[n - j] for j in range(1, n + 1)])


def poly_from_sigma(v) -> Poly:
    """``t**n + sum_j (-1)**j v_j t**(n-j)``, the inverse of :func:`pi_map` on coefficients."""
    v = list(v)
    n = len(v)
    coeffs = [None] * (n + 1)
    coeffs[n] = one_like(v[0]) if n else 1
    for j in range(1, n + 1):
        coeffs[n - j] = v[j - 1] if j % 2 == 0 else -v[j - 1]
    return Poly(coeffs)


def companion_matrix(a) -> Matrix:
    """Superdiagonal ones with last row ``(a_n, ..., a_1)``.

    Its characteristic polynomial is ``t**n - sum_j a_j t**(n-j)``.
    """
    a = list(a)
    n = len(a)
    sample = next((x for x in a if isinstance(x, Series)), a[0] if a else 1)
    one, zero = one_like(sample), zero_like(sample)
    lift = (lambda x: x if isinstance(x, Series) else sample.like([x])) if isinstance(sample, Series) else (lambda x: x)
    rows = [[one if j == i + 1 else zero for j in range(n)] for i in range(n - 1)]
    rows.append([lift(a[n - 1 - j]) for j in range(n)])
    return Matrix(rows)


def lift_cyclic(phi) -> Matrix:
    """Companion-matrix lifting of ``phi``: every value is cyclic and ``pi`` of it is ``phi``."""
    phi = list(phi)
    signed = [x if j % 2 == 0 else -x for j, x in enumerate(phi)]
    return companion_matrix(signed)


def _vec(M: Matrix):
    return list(M.entries())


def minimal_poly_degree(M: Matrix) -> int:
    """Degree of the minimal polynomial: first linear dependence among ``I, M, M^2, ...``."""
    if M.is_series:
        raise TypeError("minimal polynomial needs a constant matrix")
    exact_track = M.exact
    powers = [_vec(Matrix.identity(M.n, M.sample))]
    P = Matrix.identity(M.n, M.sample)
    for k in range(1, M.n + 1):
        P = P @ M
        powers.append(_vec(P))
        if krylov_rank(powers, exact_track) < len(powers):
            return k
    return M.n


def is_cyclic(M: Matrix) -> bool:
    """True iff the minimal polynomial has degree ``n`` (decided exactly)."""
    if not M.exact:
        raise TypeError("is_cyclic decides exactly; use is_cyclic_float for floating matrices")
    return minimal_poly_degree(M) == M.n


def is_cyclic_float(M: Matrix, tol: float = 1e-8) -> bool:
    """Advisory numeric cyclicity test via the singular values of the power basis."""
    A = np.array([[complex(x) for x in r] for r in M.rows])
    n = M.n
    powers = [np.eye(n, dtype=complex).ravel()]
    P = np.eye(n, dtype=complex)
    for _ in range(1, n):
        P = P @ A
        powers.append(P.ravel())
    K = np.array(powers)
    s = np.linalg.svd(K, compute_uv=False)
    return bool(s[-1] > tol * max(1.0, s[0]))


def conjugate(M: Matrix, P: Matrix) -> Matrix:
    """``P^{-1} M P``; raises :class:`SingularMatrix` if ``P`` is not invertible."""
    Pinv = P.inverse()
    return Pinv @ M @ P


def _as_poly(obj) -> Poly:
    if isinstance(obj, Matrix):
        return char_poly(obj.to_float() if not obj.exact else obj)
    if isinstance(obj, Poly):
        return obj
    return poly_from_sigma(list(obj))


def spectral_radius(obj):
    """Advisory ``(radius, residual)`` from the roots of the characteristic polynomial."""
    P = _as_poly(obj)
    roots, residual = poly_roots(P)
    radius = max((abs(r) for r in roots), default=0.0)
    return radius, residual


def membership(obj, margin: float = 1e-6) -> str:
    """Classify a matrix (spectral ball) or sigma vector (symmetrized polydisc).

    Returns ``"inside"``, ``"outside"`` or ``"boundary-uncertain"``.  The
    root moduli come from companion eigenvalues, so the answer is advisory.
    """
    radius, _ = spectral_radius(obj)
    if radius < 1 - margin:
        return "inside"
    if radius > 1 + margin:
        return "outside"
    return "boundary-uncertain"
