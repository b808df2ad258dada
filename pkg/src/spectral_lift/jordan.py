"""Jordan data, degeneracy indices and the modified Jordan form.

The modified Jordan form keeps the Jordan matrix but puts a ``1`` on the
superdiagonal at each junction between the blocks of two distinct
eigenvalues.  It stays upper bidiagonal, and it is cyclic exactly when its
superdiagonal has no zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InternalInvariantError, MalformedShape
from .matrix import MAX_DIM, Matrix, krylov_rank
from .scalars import ONE, ZERO, GaussQ, exact, scalar_from_json, scalar_to_json


@dataclass(frozen=True)
class EigenBlocks:
    """One eigenvalue with the sizes of its Jordan blocks (stored increasing)."""

    value: GaussQ
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "value", exact(self.value))
        sizes = tuple(sorted(int(b) for b in self.blocks))
        if not sizes or sizes[0] < 1:
            raise ValueError("block sizes must be positive and non-empty")
        object.__setattr__(self, "blocks", sizes)

    @property
    def multiplicity(self) -> int:
        return sum(self.blocks)


@dataclass(frozen=True)
class JordanSpec:
    """Distinct eigenvalues with block structures; order is the block order of the matrix."""

    eigenvalues: tuple

    def __post_init__(self):
        eig = tuple(e if isinstance(e, EigenBlocks) else EigenBlocks(*e) for e in self.eigenvalues)
        if not eig:
            raise ValueError("a Jordan spec needs at least one eigenvalue")
        values = [e.value for e in eig]
        if len(set(values)) != len(values):
            raise ValueError("eigenvalues of a Jordan spec must be pairwise distinct")
        if sum(e.multiplicity for e in eig) > MAX_DIM:
            raise ValueError(f"dimension exceeds {MAX_DIM}")
        object.__setattr__(self, "eigenvalues", eig)

    @classmethod
    def of(cls, *pairs):
        """``JordanSpec.of((0, [1, 2]), ("1/2", [1]))``"""
        return cls(tuple(EigenBlocks(v, tuple(b)) for v, b in pairs))

    @property
    def n(self) -> int:
        return sum(e.multiplicity for e in self.eigenvalues)

    @property
    def boundaries(self):
        """Cumulative multiplicities ``n_1 < ... < n_s = n``."""
        out, acc = [], 0
        for e in self.eigenvalues:
            acc += e.multiplicity
            out.append(acc)
        return out

    def diagonal(self):
        return [e.value for e in self.eigenvalues for _ in range(e.multiplicity)]

    def reordered(self, order) -> "JordanSpec":
        return JordanSpec(tuple(self.eigenvalues[i] for i in order))

    @property
    def is_cyclic(self) -> bool:
        return all(len(e.blocks) == 1 for e in self.eigenvalues)

    def to_json(self):
        return {"eigenvalues": [{"value": scalar_to_json(e.value), "blocks": list(e.blocks)} for e in self.eigenvalues]}

    @classmethod
    def from_json(cls, obj):
        if set(obj) != {"eigenvalues"}:
            raise ValueError(f"unexpected JordanSpec fields {sorted(obj)}")
        items = []
        for e in obj["eigenvalues"]:
            if set(e) != {"value", "blocks"}:
                raise ValueError(f"unexpected eigenvalue fields {sorted(e)}")
            items.append(EigenBlocks(scalar_from_json(e["value"]), tuple(int(b) for b in e["blocks"])))
        return cls(tuple(items))


def _jordan_superdiagonal(spec: JordanSpec):
    sup = []
    for e in spec.eigenvalues:
        for size in e.blocks:
            sup.append(0)  # block start (or junction) carries a zero
            sup.extend([1] * (size - 1))
    return sup[1:]


def jordan_matrix(spec: JordanSpec) -> Matrix:
    """Upper bidiagonal Jordan matrix with the blocks in spec order."""
    diag = spec.diagonal()
    sup = _jordan_superdiagonal(spec)
    n = len(diag)
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = diag[i]
        if i < n - 1 and sup[i]:
            rows[i][i + 1] = ONE
    return Matrix(rows)


def d_indices(blocks) -> tuple:
    """``(d_1, ..., d_m)``: ``d_i - 1`` counts zero superdiagonal columns among the last ``i - 1``.

    ``blocks`` are the Jordan block sizes of one eigenvalue, sorted increasingly.
    """
    blocks = list(blocks)
    if blocks != sorted(blocks):
        raise ValueError("block sizes must be sorted increasingly")
    m = sum(blocks)
    starts, acc = [], 1
    for size in blocks[:-1]:
        acc += size
        starts.append(acc)  # column index (1-based) where a later block starts
    return tuple(1 + sum(1 for b in starts if m - i + 2 <= b <= m) for i in range(1, m + 1))


def d_indices_krylov(blocks) -> tuple:
    """Cross-check of :func:`d_indices`: least number of vectors whose iterates span ``>= i`` dimensions.

    Brute force over subsets of the standard basis, which contain optimal
    generating sets for a Jordan matrix.  Intended for small sizes.
    """
    spec = JordanSpec.of((0, list(blocks)))
    B = jordan_matrix(spec)
    m = B.n
    basis = [[ONE if k == j else ZERO for k in range(m)] for j in range(m)]

    def span_dim(vectors):
        vecs = []
        for v in vectors:
            w = v
            for _ in range(m):
                vecs.append(w)
                w = [sum((B.rows[r][c] * w[c] for c in range(m)), ZERO) for r in range(m)]
        return krylov_rank(vecs, True)

    best = [0] * (m + 1)  # best[d]: largest span dimension reachable with d vectors
    for d in range(1, m + 1):
        best[d] = max(span_dim(S) for S in combinations(basis, d))
    return tuple(next(d for d in range(1, m + 1) if best[d] >= i) for i in range(1, m + 1))


@dataclass(frozen=True)
class ModifiedJordanResult:
    """Modified Jordan form ``A_prime = transition^{-1} A transition`` with its certificate."""

    spec: JordanSpec
    A: Matrix
    A_prime: Matrix
    transition: Matrix
    pattern: tuple = field(default=())

    def to_json(self):
        from .matrix import matrix_to_json

        return {
            "spec": self.spec.to_json(),
            "A": matrix_to_json(self.A),
            "A_prime": matrix_to_json(self.A_prime),
            "transition": matrix_to_json(self.transition),
            "pattern": list(self.pattern),
        }


def _junctions(spec: JordanSpec):
    """1-based indices ``n_i`` (``i < s``) that end an eigenvalue group."""
    return set(spec.boundaries[:-1])


def modified_jordan(spec: JordanSpec) -> ModifiedJordanResult:
    """Constructive modified Jordan form.

    Column ``j`` of the transition is ``e_j + v_j`` where ``v_j`` lives in the
    span of the generalized eigenspaces finished before ``j``.  Each ``v_j``
    solves an upper triangular system whose diagonal avoids zero because the
    eigenvalue at ``j`` differs from all earlier ones.
    """
    A = jordan_matrix(spec)
    n = A.n
    junctions = _junctions(spec)
    bounds = [0] + spec.boundaries
    a = [[A.rows[i][k] for k in range(n)] for i in range(n)]
    ap = [row[:] for row in a]
    for nj in junctions:
        ap[nj - 1][nj] = ONE

    cols = []
    v_prev = [ZERO] * n
    for j in range(1, n + 1):
        lam = a[j - 1][j - 1]
        N = max(b for b in bounds if b < j)
        if j == 1 or N == 0:
            v = [ZERO] * n
        else:
            a_old = a[j - 2][j - 1]
            a_new = ap[j - 2][j - 1]
            rhs = [v_prev[i] * a_new for i in range(n)]
            rhs[j - 2] = rhs[j - 2] + (a_new - a_old)
            if any(rhs[i] for i in range(N, n)):
                raise InternalInvariantError("right-hand side leaves the invariant subspace")
            v = [ZERO] * n
            for i in range(N - 1, -1, -1):
                acc = rhs[i]
                if i + 1 < N:
                    acc = acc - a[i][i + 1] * v[i + 1]
                piv = a[i][i] - lam
                if not piv:
                    raise InternalInvariantError("restricted operator is singular")
                v[i] = acc / piv
        col = v[:]
        col[j - 1] = col[j - 1] + ONE
        cols.append(col)
        v_prev = v
    T = Matrix.from_columns(cols)
    A_prime = Matrix(ap)
    if not (A @ T) == (T @ A_prime):
        raise InternalInvariantError("modified Jordan certificate failed")
    return ModifiedJordanResult(spec, A, A_prime, T, superdiagonal_pattern(A_prime))


def superdiagonal_pattern(A_prime: Matrix) -> tuple:
    """The ``{0, 1}`` superdiagonal of a matrix in modified Jordan shape."""
    n = A_prime.n
    for i in range(n):
        for k in range(n):
            if k not in (i, i + 1) and A_prime.rows[i][k]:
                raise MalformedShape(f"nonzero entry off the bidiagonal at ({i}, {k})")
    out = []
    for i in range(n - 1):
        x = A_prime.rows[i][i + 1]
        if x == ONE:
            out.append(1)
        elif not x:
            if A_prime.rows[i][i] != A_prime.rows[i + 1][i + 1]:
                raise MalformedShape(f"zero superdiagonal at {i} between distinct eigenvalues")
            out.append(0)
        else:
            raise MalformedShape(f"superdiagonal entry {x} is neither 0 nor 1")
    return tuple(out)


def spec_from_matrix(M: Matrix, eigenvalues) -> JordanSpec:
    """Jordan structure of an exact matrix whose eigenvalues are supplied.

    Block counts come from the rank sequence of ``(M - lambda I)^k``.
    """
    n = M.n
    items = []
    for lam in eigenvalues:
        lam = exact(lam)
        Nm = M - Matrix.identity(n) * lam
        ranks = [n]
        P = Matrix.identity(n)
        for _ in range(n):
            P = P @ Nm
            ranks.append(krylov_rank([list(r) for r in P.rows], True))
            if ranks[-1] == ranks[-2]:
                break
        # number of blocks of size >= k is ranks[k-1] - ranks[k]
        at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
        sizes = []
        for k, cnt in enumerate(at_least, start=1):
            nxt = at_least[k] if k < len(at_least) else 0
            sizes.extend([k] * (cnt - nxt))
        if not sizes:
            raise ValueError(f"{lam} is not an eigenvalue")
        items.append(EigenBlocks(lam, tuple(sizes)))
    spec = JordanSpec(tuple(items))
    if spec.n != n:
        raise ValueError("supplied eigenvalues do not account for the whole spectrum")
    return spec
