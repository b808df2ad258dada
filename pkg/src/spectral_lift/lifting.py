"""Lifting a map into the symmetrized polydisc through prescribed matrices.

The lift has the bidiagonal-plus-last-row shape

    phi_11  f_2
            phi_22  f_3
                    ...    f_n
    phi_n1  phi_n2  ...    phi_nn

where the last row is forced by the characteristic polynomial through
divided differences.  What remains free are the ``f_k`` and the diagonal
functions, and the work is choosing them so the last row is holomorphic and
vanishes at every node.  At one node this reduces to a finite system of jet
equations for the diagonal, solved here coefficient by coefficient with a
depth-first search over the roots.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .conditions import check_conditions, recenter, required_orders
from .divdiff import synthetic_quotient
from .errors import (
    ConditionsFail,
    FrameZeroViolation,
    InternalInvariantError,
    JetEquationError,
    PoleError,
    TrackMismatch,
    UnsupportedDimension,
)
from .jordan import JordanSpec, ModifiedJordanResult, d_indices, jordan_matrix, modified_jordan
from .matrix import Matrix, matrix_to_json
from .poly import JetConstraint, Poly, hermite_interpolate, poly_gcd, poly_roots, poly_to_json
from .rational import RationalFunction, RationalMatrix
from .scalars import DEFAULT_TOL, ONE, ZERO, GaussQ, exact, rationalize, scalar_to_json
from .series import AtLeast, Series, series_div
from .spectral import SigmaVector, char_poly, is_cyclic, is_cyclic_float, poly_from_sigma

SINGLE = "exact-single-node"
MULTI = "float-multi-node"
JET_TOL = 1e-8  # zero test for float jet coefficients


# -- shapes -------------------------------------------------------------------

def classify_shape(spec: JordanSpec) -> str:
    """Name of the case a target falls into (``cyclic``, ``scalar``, ``n4_two_derogatory_groups``, ...)."""
    eig = spec.eigenvalues
    n = spec.n
    if spec.is_cyclic:
        return "cyclic"
    if len(eig) == 1:
        return "scalar" if all(b == 1 for b in eig[0].blocks) else "single_eigenvalue"
    derog = [e for e in eig if len(e.blocks) > 1]
    if n == 4:
        if len(derog) == 2:
            return "n4_two_derogatory_groups"
        if derog[0].blocks == (1, 1, 1):
            return "n4_triple_scalar_group"
        return "n4_one_derogatory_group"
    if n == 5:
        if len(eig) == 2 and len(derog) == 2:
            blocks = sorted(e.blocks for e in eig)
            if blocks == [(1, 1), (1, 1, 1)]:
                return "n5_two_scalar_groups"
            return "n5_two_derogatory_groups"
        return "n5_general"
    return f"n{n}_derogatory"


def frame_orders(pattern) -> list:
    """Required vanishing order of ``Delta^{l-1} P(phi_11..phi_ll)`` for ``l = 1..n-1``.

    ``r_l = 1 + #{k > l : f_k vanishes at the node}`` so that the last-row
    quotient is holomorphic and zero at the node.
    """
    n = len(pattern) + 1
    return [1 + sum(1 for k in range(l + 1, n + 1) if pattern[k - 2] == 0) for l in range(1, n)]


# -- frames and results ---------------------------------------------------------------

@dataclass
class LiftingFrame:
    """Free data of the lift: ``f = [f_2..f_n]`` and ``diag = [phi_11..phi_{n-1,n-1}]``.

    Single-node frames hold series at the node; multi-node frames hold
    polynomials, with each ``f_k`` split into its node zeros and a unit part.
    """

    f: list
    diag: list
    mode: str = SINGLE
    nodes: tuple = ()
    targets: tuple = ()  # modified Jordan forms at the nodes, when known
    zero_factors: list = field(default_factory=list)
    unit_factors: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.f) != len(self.diag):
            raise ValueError("need as many superdiagonal functions as diagonal ones")
        for k, fk in enumerate(self.f, start=2):
            zero = fk.is_zero() if isinstance(fk, Poly) else fk.is_known_zero()
            if zero:
                raise ValueError(f"f_{k} is identically zero")

    @property
    def n(self):
        return len(self.f) + 1

    def to_json(self):
        def enc(x):
            if isinstance(x, Poly):
                return {"poly": poly_to_json(x)}
            from .series import series_to_json

            return series_to_json(x)

        return {
            "mode": self.mode,
            "nodes": [scalar_to_json(a) for a in self.nodes],
            "f": [enc(x) for x in self.f],
            "diag": [enc(x) for x in self.diag],
        }


@dataclass
class Certificate:
    charpoly_ok: bool
    node_values_ok: bool
    last_row_vanishing_ok: bool
    cyclicity_samples: list
    pole_diagnostics: dict = field(default_factory=dict)
    advisory: bool = False
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.charpoly_ok
            and self.node_values_ok
            and self.last_row_vanishing_ok
            and all(s["cyclic"] for s in self.cyclicity_samples)
            and not self.pole_diagnostics.get("poles_in_disk", False)
        )

    def to_json(self):
        return {
            "ok": self.ok,
            "charpoly_ok": self.charpoly_ok,
            "node_values_ok": self.node_values_ok,
            "last_row_vanishing_ok": self.last_row_vanishing_ok,
            "cyclicity_samples": self.cyclicity_samples,
            "pole_diagnostics": self.pole_diagnostics,
            "advisory": self.advisory,
            "notes": list(self.notes),
        }


@dataclass
class NodeSolution:
    """Everything decided at one node: ordering, modified Jordan form and diagonal jets."""

    alpha: object
    spec: JordanSpec
    order: tuple
    mjf: ModifiedJordanResult
    similarity: Matrix  # S with S^{-1} A S = A', A = jordan_matrix(spec)
    required: list
    diag: list  # series of phi_kk at the node
    residuals: list
    shape: str

    @property
    def pattern(self):
        return self.mjf.pattern

    @property
    def exact(self) -> bool:
        return all(x.exact for x in self.diag)

    def jet_length(self) -> int:
        return max(self.required, default=1)

    def jets(self) -> list:
        """Value and derivative constraints on every ``phi_kk`` (orders below the largest required order)."""
        out = []
        R = self.jet_length()
        for k, x in enumerate(self.diag, start=1):
            for q in range(R):
                out.append(JetConstraint(self.alpha, f"phi_{k}{k}", q, x[q] * factorial(q)))
        return out

    def to_json(self):
        return {
            "alpha": scalar_to_json(self.alpha),
            "shape": self.shape,
            "order": list(self.order),
            "pattern": list(self.pattern),
            "required_orders": self.required,
            "modified_jordan": self.mjf.to_json(),
            "similarity": matrix_to_json(self.similarity),
            "jets": [c.to_json() for c in self.jets()],
            "jet_residuals": self.residuals,
        }


@dataclass
class LiftResult:
    Phi: object  # Matrix of series (single node) or RationalMatrix
    certificate: Certificate
    frame: LiftingFrame
    nodes: list = field(default_factory=list)
    conjugated: bool = False
    Phi_modified: object = None

    def to_json(self):
        from .series import series_to_json

        if isinstance(self.Phi, RationalMatrix):
            phi = self.Phi.to_json()
        else:
            phi = matrix_to_json(self.Phi)
        return {
            "mode": self.frame.mode,
            "Phi": phi,
            "conjugated_to_targets": self.conjugated,
            "certificate": self.certificate.to_json(),
            "nodes": [s.to_json() for s in self.nodes],
            "frame": self.frame.to_json(),
        }


# -- the jet solver --------------------------------------------------------------------

def _float_zero(x, tol):
    return abs(x) <= tol


def _distinct_roots(hp: Poly, exact_track: bool):
    """Distinct roots of ``hp`` as ``(root, relative residual)``; exact roots first."""
    if exact_track:
        g = poly_gcd(hp, hp.derivative())
        sqf = hp.divmod(g)[0] if g.degree > 0 else hp
        approx, _ = poly_roots(sqf)
        exact_roots, float_roots = [], []
        for r in approx:
            cand = rationalize(r, 10**6)
            if not sqf(cand):
                if cand not in exact_roots:
                    exact_roots.append(cand)
            else:
                float_roots.append(r)
        scale = max(abs(complex(c)) for c in hp.coeffs)
        fl = hp.to_float()
        out = [(r, 0.0) for r in exact_roots]
        out += [(r, abs(fl(r)) / scale) for r in float_roots]
        return out
    approx, _ = poly_roots(hp)
    scale = max(abs(c) for c in hp.coeffs)
    out = []
    for r in approx:
        if all(abs(r - s) > 1e-7 * max(1.0, abs(s)) for s, _ in out):
            out.append((r, abs(hp(r)) / scale))
    return out


def _series_from(coeffs, trunc, center, exact_track):
    if exact_track:
        return Series(coeffs, trunc, center, exact=True)
    return Series([complex(c) for c in coeffs], trunc, complex(center), exact=False)


def _solve_entry(G, r, center, exact_track, tol):
    """Yield ``(coeffs, exact_track, residuals)`` with ``ord sum_i G_i u^i >= r`` for ``u = sum_q coeffs[q] w^q``.

    ``G`` are the Taylor coefficients (in ``t``) of the partially divided
    characteristic polynomial at the eigenvalue.  Unknown coefficients of ``u``
    are fixed one at a time: the lowest order at which the expansion still
    depends on the data is a polynomial in the next coefficient, whose roots
    branch the search.  Later coefficients cannot reach that order.
    """
    if r < 1:
        yield [], exact_track, []
        return
    G = [g.truncate(r) if g.trunc >= r else g for g in G]
    if any(g.trunc < r for g in G):
        from .errors import TruncationTooSmall

        raise TruncationTooSmall(f"jet equations need {r} coefficients, only {min(g.trunc for g in G)} known")

    def rec(G, u0, q, ex, residuals):
        zero = ZERO if ex else 0j
        one = ONE if ex else 1 + 0j
        base = _series_from([zero] + u0, r, center, ex)
        wq = _series_from([zero] * q + [one], r, center, ex)
        U = Poly([base, wq])
        H = Poly([G[0]])
        Upow = Poly([base.like([one])])
        for gi in G[1:]:
            Upow = Upow * U
            H = H + Upow * gi
        scale = 1.0 if ex else max([1.0] + [abs(c) for g in G for c in g.coeffs])
        hp = None
        for p in range(r):
            cs = [c[p] for c in H.coeffs]
            if not ex:
                cs = [0j if _float_zero(c, tol * scale) else c for c in cs]
            cand = Poly(cs)
            if not cand.is_zero():
                hp = cand
                break
        if hp is None:
            yield u0, ex, residuals
            return
        if hp.degree < 1:
            return
        for root, res in _distinct_roots(hp, ex):
            if isinstance(root, complex) and ex:
                G2 = [g.to_float() for g in G]
                u2 = [complex(c) for c in u0]
                yield from rec(G2, u2 + [root], q + 1, False, residuals + [res])
            else:
                yield from rec(G, u0 + [root], q + 1, ex, residuals + [res])

    yield from rec(G, [], 1, exact_track, [])


def _to_float_poly(P: Poly) -> Poly:
    return Poly([c.to_float() if isinstance(c, Series) else complex(c) for c in P.coeffs])


def _search_diagonal(P: Poly, lams, req, trunc, center, exact_track, tol):
    """Depth-first search for ``phi_11..phi_{n-1,n-1}``; returns ``(diag, residuals)`` or ``None``."""
    n = len(lams)

    def rec(P, l, prefix, ex, residuals):
        if l == n:
            return prefix, residuals
        q = P
        for x in prefix:
            q, _ = synthetic_quotient(q, x)
        lam = lams[l - 1] if ex else complex(lams[l - 1])
        G = q.taylor_coefficients(lam)
        for coeffs, ex2, res in _solve_entry(G, req[l - 1], center, ex, tol):
            P2, pre2 = P, prefix
            if ex and not ex2:
                P2 = _to_float_poly(P)
                pre2 = [x.to_float() for x in prefix]
            lam2 = lam if ex2 else complex(lam)
            x = _series_from([lam2] + list(coeffs), trunc, center, ex2)
            found = rec(P2, l + 1, pre2 + [x], ex2, residuals + res)
            if found is not None:
                return found
        return None

    return rec(P, 1, [], exact_track, [])


def _orderings(spec: JordanSpec):
    """Eigenvalue orders to try: as given, then cyclic groups last, then the rest."""
    s = len(spec.eigenvalues)
    perms = list(itertools.permutations(range(s)))
    cyclic = [len(e.blocks) == 1 for e in spec.eigenvalues]
    return sorted(perms, key=lambda p: (p != tuple(range(s)), not cyclic[p[-1]]))


def _permutation_matrix(spec: JordanSpec, order) -> Matrix:
    starts, acc = [], 0
    for e in spec.eigenvalues:
        starts.append(acc)
        acc += e.multiplicity
    old = []
    for g in order:
        old.extend(range(starts[g], starts[g] + spec.eigenvalues[g].multiplicity))
    n = spec.n
    return Matrix([[ONE if old[j] == i else ZERO for j in range(n)] for i in range(n)])


def _trivial(shape):
    return shape in ("cyclic", "scalar", "single_eigenvalue")


def solve_node(phi: SigmaVector, spec: JordanSpec, tol: float = DEFAULT_TOL) -> NodeSolution:
    """Conditions, modified Jordan form and diagonal jets at one node.

    ``phi`` is a sigma vector of series centred at the node.
    """
    comps = list(phi)
    n = spec.n
    if len(comps) != n:
        raise ValueError(f"phi has {len(comps)} components, target has size {n}")
    report = check_conditions(phi, spec, tol)
    if not report.passed:
        raise ConditionsFail("lifting conditions fail at the node", report)
    shape = classify_shape(spec)
    if n >= 6 and not _trivial(shape):
        raise UnsupportedDimension(
            f"no lifting construction for derogatory targets with several eigenvalues at n={n}; see the counterexample lab"
        )
    center = comps[0].center
    trunc = comps[0].trunc
    exact_track = all(c.exact for c in comps)
    P = poly_from_sigma(comps)
    A = jordan_matrix(spec)
    for order in _orderings(spec):
        sp = spec.reordered(order)
        mj = modified_jordan(sp)
        req = frame_orders(mj.pattern) if n > 1 else []
        lams = [mj.A_prime.rows[i][i] for i in range(n)]
        found = _search_diagonal(P, lams, req, trunc, center, exact_track, JET_TOL)
        if found is None:
            continue
        diag, residuals = found
        S = _permutation_matrix(spec, order) @ mj.transition
        if not (A @ S) == (S @ mj.A_prime):
            raise InternalInvariantError("similarity certificate failed")
        return NodeSolution(center, spec, tuple(order), mj, S, req, diag, residuals, shape)
    raise JetEquationError(f"no admissible diagonal jets for target shape {shape}")


def jet_requirements(mjf: ModifiedJordanResult, phi: SigmaVector, tol: float = DEFAULT_TOL) -> list:
    """Jet constraints on the diagonal for a fixed modified Jordan target (no reordering)."""
    comps = list(phi)
    n = mjf.A_prime.n
    if n >= 6 and not _trivial(classify_shape(mjf.spec)):
        raise UnsupportedDimension(f"n={n} derogatory targets with several eigenvalues are not liftable here")
    report = check_conditions(phi, mjf.spec, tol)
    if not report.passed:
        raise ConditionsFail("lifting conditions fail at the node", report)
    req = frame_orders(mjf.pattern) if n > 1 else []
    lams = [mjf.A_prime.rows[i][i] for i in range(n)]
    found = _search_diagonal(
        poly_from_sigma(comps), lams, req, comps[0].trunc, comps[0].center, all(c.exact for c in comps), JET_TOL
    )
    if found is None:
        raise JetEquationError("no admissible jets for this ordering")
    diag, residuals = found
    sol = NodeSolution(comps[0].center, mjf.spec, tuple(range(len(mjf.spec.eigenvalues))), mjf,
                       mjf.transition, req, diag, residuals, classify_shape(mjf.spec))
    return sol.jets()


def _unit_series(like: Series, value):
    return like.like([value])


def single_eigenvalue_frame(spec: JordanSpec, phi: SigmaVector, alpha=None, tol: float = DEFAULT_TOL) -> LiftingFrame:
    """Frame for a target with one eigenvalue: constant diagonal, ``f_k = (z - alpha)`` at block starts."""
    if len(spec.eigenvalues) != 1:
        raise ValueError("single_eigenvalue_frame needs exactly one distinct eigenvalue")
    comps = list(phi)
    report = check_conditions(phi, spec, tol)
    if not report.passed:
        raise ConditionsFail("lifting conditions fail at the node", report)
    like = comps[0]
    ex = like.exact
    lam = spec.eigenvalues[0].value if ex else complex(spec.eigenvalues[0].value)
    mj = modified_jordan(spec)
    pattern = mj.pattern
    zero, one = (ZERO, ONE) if ex else (0j, 1 + 0j)
    f = [like.like([zero, one]) if p == 0 else like.like([one]) for p in pattern]
    diag = [like.like([lam]) for _ in pattern]
    P = poly_from_sigma(comps)
    for l, r in enumerate(frame_orders(pattern), start=1):
        # the divided difference at a repeated point is a scaled derivative
        val = P.derivative(l - 1)(lam)
        val = val if isinstance(val, Series) else like.like([val])
        o = val.order(tol)
        if not isinstance(o, AtLeast) and o < r:
            raise InternalInvariantError(f"order {o} < {r} for the constant-diagonal frame")
    return LiftingFrame(f, diag, SINGLE, (like.center,), (mj.A_prime,))


def frame_from_node(sol: NodeSolution, like: Series) -> LiftingFrame:
    ex = all(x.exact for x in sol.diag) and like.exact
    zero, one = (ZERO, ONE) if ex else (0j, 1 + 0j)
    base = like if ex else like.to_float()
    f = [base.like([zero, one]) if p == 0 else base.like([one]) for p in sol.pattern]
    target = sol.mjf.A_prime if ex else sol.mjf.A_prime.to_float()
    return LiftingFrame(f, list(sol.diag), SINGLE, (base.center,), (target,))


# -- assembly -------------------------------------------------------------------------------

def _assemble_single(phi: SigmaVector, frame: LiftingFrame, tol: float) -> Matrix:
    comps = list(phi)
    n = len(comps)
    ex = all(c.exact for c in comps) and all(x.exact for x in frame.diag) and all(x.exact for x in frame.f)
    if not ex:
        comps = [c.to_float() for c in comps]
        diag = [x.to_float() for x in frame.diag]
        f = [x.to_float() for x in frame.f]
    else:
        diag, f = list(frame.diag), list(frame.f)
    like = comps[0]
    zero = like.like([])
    if n == 1:
        return Matrix([[comps[0]]])
    P = poly_from_sigma(comps)
    last = []
    q = P
    for l in range(1, n):
        x = diag[l - 1]
        num = q(x)
        den = like.like([ONE if ex else 1 + 0j])
        for fk in f[l - 1:]:
            den = den * fk
        last.append(-series_div(num, den, JET_TOL if not ex else tol))
        q, _ = synthetic_quotient(q, x)
    phi_nn = comps[0]
    for x in diag:
        phi_nn = phi_nn - x
    last.append(phi_nn)
    rows = []
    for i in range(n - 1):
        row = [zero] * n
        row[i] = diag[i]
        row[i + 1] = f[i]
        rows.append(row)
    rows.append(last)
    return Matrix(rows)


def _as_zpoly(x, ex):
    if isinstance(x, Poly):
        return x if ex else x.to_float()
    return Poly([x if ex else complex(x)])


def _assemble_multi(phi_polys, frame: LiftingFrame, tol: float) -> RationalMatrix:
    n = len(phi_polys)
    ex = all(p.exact for p in phi_polys) and all(p.exact for p in frame.diag) and all(p.exact for p in frame.f)
    cv = (lambda p: p) if ex else (lambda p: p.to_float())
    phis = [cv(p) for p in phi_polys]
    one = Poly([ONE if ex else 1 + 0j])
    if n == 1:
        return RationalMatrix([[RationalFunction(phis[0])]])
    diag = [cv(p) for p in frame.diag]
    zparts = [cv(p) for p in frame.zero_factors]
    uparts = [cv(p) for p in frame.unit_factors]
    tcoeffs = [None] * (n + 1)
    tcoeffs[n] = one
    for j in range(1, n + 1):
        tcoeffs[n - j] = phis[j - 1] if j % 2 == 0 else -phis[j - 1]
    P = Poly(tcoeffs)
    q = P
    last = []
    for l in range(1, n):
        x = diag[l - 1]
        num = _as_zpoly(q(x), ex)
        Z, U = one, one
        for k in range(l, n):
            Z = Z * zparts[k - 1]
            U = U * uparts[k - 1]
        quo, rem = num.divmod(Z)
        if ex:
            if not rem.is_zero():
                raise PoleError(f"last-row entry {l} has a pole at a node")
        else:
            scale = max([1.0] + [abs(c) for c in num.coeffs])
            if any(abs(c) > JET_TOL * scale for c in rem.coeffs):
                raise PoleError(f"last-row entry {l} has a pole at a node")
        last.append(RationalFunction(-quo, U))
        q, _ = synthetic_quotient(q, x)
    phi_nn = phis[0]
    for x in diag:
        phi_nn = phi_nn - x
    last.append(RationalFunction(phi_nn))
    zero = RationalFunction(Poly(), one)
    rows = []
    for i in range(n - 1):
        row = [zero] * n
        row[i] = RationalFunction(diag[i])
        row[i + 1] = RationalFunction(cv(frame.f[i]))
        rows.append(row)
    rows.append(last)
    return RationalMatrix(rows)


def assemble(phi, frame: LiftingFrame, tol: float = DEFAULT_TOL, samples: int = 5) -> LiftResult:
    """Build the lift from a frame and certify it.

    ``phi`` is a sigma vector of series for single-node frames, or a list of
    polynomials for multi-node frames.
    """
    if frame.mode == SINGLE:
        Phi = _assemble_single(phi, frame, tol)
    else:
        Phi = _assemble_multi(list(phi), frame, tol)
    cert = verify_lift(Phi, phi, frame.nodes, frame.targets, tol, samples, frame=frame)
    return LiftResult(Phi, cert, frame)


# -- verification ------------------------------------------------------------------------------

_SAMPLE_OFFSETS = [
    GaussQ(Fraction(1, 7)),
    GaussQ(Fraction(-1, 9)),
    GaussQ(0, Fraction(1, 11)),
    GaussQ(0, Fraction(-1, 13)),
    GaussQ(Fraction(1, 17), Fraction(1, 17)),
    GaussQ(Fraction(-1, 19), Fraction(1, 23)),
    GaussQ(Fraction(1, 29), Fraction(-1, 31)),
]


def sample_points(nodes, count: int = 5):
    """Deterministic points near (but off) the nodes, inside the unit disk."""
    pts = []
    base = list(nodes) or [ZERO]
    i = 0
    while len(pts) < count and i < 10 * count + 10:
        a = base[i % len(base)]
        off = _SAMPLE_OFFSETS[(i // len(base)) % len(_SAMPLE_OFFSETS)]
        p = a + (off if isinstance(a, GaussQ) else complex(off))
        i += 1
        if abs(complex(p)) >= 1 or any(abs(complex(p) - complex(b)) < 1e-12 for b in base):
            continue
        if all(abs(complex(p) - complex(b)) > 1e-12 for b in pts):
            pts.append(p)
    return pts


def _charpoly_matches(M: Matrix, phi: SigmaVector, tol) -> bool:
    cp = char_poly(M)
    P = poly_from_sigma(list(phi))
    if cp.exact != P.exact:
        cp, P = cp.to_float(), P.to_float()
    return cp.agrees(P, tol)


def _value_matches(V: Matrix, T: Matrix, tol) -> bool:
    if V.exact and T.exact:
        return V == T
    return V.to_float().agrees(T.to_float(), tol)


def _is_zero_value(x, tol):
    if isinstance(x, GaussQ):
        return not x
    return abs(complex(x)) <= tol


def verify_lift(Phi, phi, nodes, targets, tol: float = DEFAULT_TOL, samples: int = 5, frame=None) -> Certificate:
    """Independent checks of a lift; returns a (possibly falsifying) certificate.

    (i) characteristic polynomial equals ``P_[phi]`` (up to truncation, or
    within ``tol``); (ii) values at the nodes equal the targets; (iii) the
    last row apart from the corner vanishes at the nodes; (iv) cyclicity at
    sampled points off the nodes.
    """
    nodes = list(nodes)
    targets = list(targets)
    notes = []
    advisory = False
    poles = {}
    if isinstance(Phi, RationalMatrix):
        phi_polys = list(phi)
        ex = Phi.exact and all(p.exact for p in phi_polys)
        trunc = len(phi_polys) + 3
        centers = list(nodes)
        extra = ZERO if ex else 0j
        while any(abs(complex(extra) - complex(a)) < 1e-12 for a in centers):
            extra = extra + (GaussQ(Fraction(1, 3)) if ex else 1 / 3)
        centers.append(extra)
        cp_ok = True
        mats = {}
        for c in centers:
            c = c if ex else complex(c)
            M = Phi.to_series(c, trunc)
            ref = SigmaVector([p.to_series(c, trunc) if ex else p.to_float().to_series(c, trunc) for p in phi_polys])
            cp_ok = cp_ok and _charpoly_matches(M, ref, tol)
            mats[c] = M
        node_mats = [mats[a if ex else complex(a)].value() for a in nodes]
        all_poles = Phi.poles()
        mod = min((abs(r) for r in all_poles), default=float("inf"))
        poles = {"min_pole_modulus": None if mod == float("inf") else mod, "poles_in_disk": mod <= 1.0}
        if all_poles:
            notes.append("pole-freeness in the disk is checked by floating root location (advisory)")
        evaluate = Phi.evaluate
        advisory = not ex
    else:
        M = Phi
        ex = M.exact
        cp_ok = _charpoly_matches(M, phi, tol)
        node_mats = [M.value()]
        evaluate = M.evaluate
        advisory = not ex
    n = node_mats[0].n if node_mats else 0
    vals_ok = all(_value_matches(V, T, tol) for V, T in zip(node_mats, targets)) if targets else True
    if not targets:
        notes.append("no targets supplied; node values not checked")
    last_ok = all(_is_zero_value(V.rows[n - 1][l], tol) for V in node_mats for l in range(n - 1))
    cyc = []
    for z in sample_points(nodes, samples):
        zz = z if ex else complex(z)
        V = evaluate(zz)
        ok = is_cyclic(V) if V.exact else is_cyclic_float(V)
        cyc.append({"point": scalar_to_json(zz), "cyclic": bool(ok)})
    if not ex:
        notes.append("floating-point certificate: comparisons use the tolerance")
    return Certificate(cp_ok, vals_ok, last_ok, cyc, poles, advisory, notes)


# -- multi-node frames -------------------------------------------------------------------------

def _random_scalar(rng: random.Random, ex: bool):
    if ex:
        return GaussQ(Fraction(rng.randint(-4, 4), rng.randint(1, 4)), Fraction(rng.randint(-4, 4), rng.randint(1, 4)))
    return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))


def build_frame(solutions, rng: random.Random | None = None, retries: int = 50, margin: float = 1e-6) -> LiftingFrame:
    """Interpolating frame through every node's jets.

    ``f_k = prod_{zero nodes} (z - alpha_j) * g_k`` with ``g_k`` fixing the
    value ``1`` at the other nodes.  ``g_k`` is checked for zeros in the closed
    disk and corrected by random multiples of ``prod_j (z - alpha_j)``.
    """
    rng = rng or random.Random(0)
    sols = list(solutions)
    n = sols[0].spec.n
    alphas = [s.alpha for s in sols]
    for i, a in enumerate(alphas):
        if any(a == b for b in alphas[:i]):
            raise ValueError("nodes must be distinct")
    ex = all(s.exact for s in sols) and all(isinstance(a, GaussQ) for a in alphas)
    conv = (lambda x: x) if ex else complex
    one = ONE if ex else 1 + 0j
    alphas = [conv(a) for a in alphas]
    # diagonal by Hermite interpolation of the per-node jets
    diag = []
    for k in range(1, n):
        cons = []
        for s, a in zip(sols, alphas):
            for c in s.jets():
                if c.function == f"phi_{k}{k}":
                    cons.append(JetConstraint(a, c.function, c.order, conv(c.value)))
        diag.append(hermite_interpolate(cons))
    all_nodes = Poly([one])
    for a in alphas:
        all_nodes = all_nodes * Poly([-a, one])
    f, zparts, uparts = [], [], []
    min_mod = float("inf")
    for k in range(2, n + 1):
        Z = [j for j, s in enumerate(sols) if s.pattern[k - 2] == 0]
        zpoly = Poly([one])
        for j in Z:
            zpoly = zpoly * Poly([-alphas[j], one])
        free = [j for j in range(len(sols)) if j not in Z]
        if free:
            cons = [JetConstraint(alphas[j], "g", 0, one / zpoly(alphas[j])) for j in free]
            g0 = hermite_interpolate(cons)
        else:
            g0 = Poly([one])
        g = g0
        for attempt in range(retries + 1):
            ok = all(not _is_zero_value(g(alphas[j]), 0.0) for j in Z)
            if ok and g.degree >= 1:
                roots, _ = poly_roots(g)
                m = min(abs(r) for r in roots)
                ok = m > 1 + margin
            if ok:
                break
            deg = attempt % 3
            h = Poly([_random_scalar(rng, ex) * (GaussQ(Fraction(1, 1 + attempt)) if ex else 1 / (1 + attempt))
                      for _ in range(deg + 1)])
            g = g0 + all_nodes * h
        else:
            raise FrameZeroViolation(f"g_{k} keeps a zero in the closed disk after {retries} corrections")
        if g.degree >= 1:
            min_mod = min(min_mod, min(abs(r) for r in poly_roots(g)[0]))
        zparts.append(zpoly)
        uparts.append(g)
        f.append(zpoly * g)
    targets = tuple(s.mjf.A_prime if ex else s.mjf.A_prime.to_float() for s in sols)
    return LiftingFrame(f, diag, MULTI, tuple(alphas), targets, zparts, uparts)


# -- problems and the driver ---------------------------------------------------------------------

@dataclass
class LiftProblem:
    phi: list  # Poly per sigma component
    nodes: list  # (alpha, JordanSpec)
    mode: str = "auto"  # auto | exact | float
    trunc: int | None = None
    tol: float = DEFAULT_TOL
    seed: int = 0
    samples: int = 5

    @property
    def n(self):
        return len(self.phi)

    def to_json(self):
        return {
            "n": self.n,
            "phi": [poly_to_json(p) for p in self.phi],
            "nodes": [{"alpha": scalar_to_json(a), "target": s.to_json()} for a, s in self.nodes],
            "mode": self.mode,
            "trunc": self.trunc,
            "tol": self.tol,
        }

    @classmethod
    def from_json(cls, obj, **overrides):
        from .poly import poly_from_json
        from .scalars import scalar_from_json

        allowed = {"n", "phi", "nodes", "mode", "trunc", "tol", "seed", "samples"}
        extra = set(obj) - allowed
        if extra:
            raise ValueError(f"unknown problem fields {sorted(extra)}")
        phi = [poly_from_json(p) for p in obj["phi"]]
        if "n" in obj and int(obj["n"]) != len(phi):
            raise ValueError("n does not match the number of sigma components")
        nodes = []
        for nd in obj["nodes"]:
            if set(nd) != {"alpha", "target"}:
                raise ValueError(f"node fields must be alpha and target, got {sorted(nd)}")
            spec = JordanSpec.from_json(nd["target"])
            if spec.n != len(phi):
                raise ValueError("target size does not match n")
            nodes.append((scalar_from_json(nd["alpha"]), spec))
        kw = dict(
            mode=obj.get("mode", "auto"),
            trunc=obj.get("trunc"),
            tol=float(obj.get("tol", DEFAULT_TOL)),
            seed=int(obj.get("seed", 0)),
            samples=int(obj.get("samples", 5)),
        )
        kw.update({k: v for k, v in overrides.items() if v is not None})
        if kw["mode"] not in ("auto", "exact", "float"):
            raise ValueError(f"unknown mode {kw['mode']!r}")
        return cls(phi, nodes, **kw)


def _default_trunc(n, nodes):
    """``n + max required vanishing order + 2``."""
    top = max((max(required_orders(spec).values()) for _, spec in nodes), default=1)
    return n + top + 2


def lift_single(phi: SigmaVector, spec: JordanSpec, tol: float = DEFAULT_TOL, samples: int = 5,
                conjugate_back: bool = True) -> LiftResult:
    """Lift germs at one node; with ``conjugate_back`` the value at the node is ``jordan_matrix(spec)`` itself."""
    sol = solve_node(phi, spec, tol)
    frame = frame_from_node(sol, list(phi)[0])
    res = assemble(phi, frame, tol, samples)
    res.nodes = [sol]
    res.Phi_modified = res.Phi
    if not res.certificate.ok:
        raise InternalInvariantError(f"lift failed its own certificate: {res.certificate.to_json()}")
    if conjugate_back:
        S = sol.similarity
        Sinv = S.inverse()
        if not res.Phi.exact:
            S, Sinv = S.to_float(), Sinv.to_float()
        Phi = S @ res.Phi @ Sinv
        A = jordan_matrix(spec)
        if not Phi.exact:
            A = A.to_float()
        cert = verify_lift(Phi, phi, frame.nodes, (A,), tol, samples)
        cert.notes.append("conjugated by the node similarity so the value at the node is the given target")
        res = LiftResult(Phi, cert, frame, [sol], True, res.Phi_modified)
    return res


def lift(problem: LiftProblem) -> LiftResult:
    """Driver: conditions, modified Jordan forms, jets, frame, assembly and certificate."""
    n = problem.n
    if n == 0:
        raise ValueError("empty problem")
    if not problem.nodes:
        raise ValueError("at least one node is required")
    K = problem.trunc or _default_trunc(n, problem.nodes)
    phis = list(problem.phi)
    nodes = list(problem.nodes)
    if problem.mode == "float":
        phis = [p.to_float() for p in phis]
        nodes = [(complex(a), s) for a, s in nodes]
    if len(nodes) == 1 and problem.mode != "float":
        alpha, spec = nodes[0]
        phi = recenter(phis, alpha, K)
        return lift_single(phi, spec, problem.tol, problem.samples)
    if problem.mode == "exact":
        raise TrackMismatch("exact mode handles one node; use auto or float for several")
    sols = []
    for alpha, spec in nodes:
        center = alpha if isinstance(alpha, GaussQ) or problem.mode != "float" else complex(alpha)
        ser = SigmaVector([p.to_series(center, K) for p in phis])
        sols.append(solve_node(ser, spec, problem.tol))
    frame = build_frame(sols, random.Random(problem.seed))
    res = assemble(phis, frame, problem.tol, problem.samples)
    res.nodes = sols
    res.Phi_modified = res.Phi
    res.certificate.notes.append("node values are the modified Jordan forms; similarity certificates per node")
    return res


def first_entry_order_audit(sol: NodeSolution, phi: SigmaVector, tol: float = DEFAULT_TOL) -> bool:
    """``ord P(phi_11) >= d_{m_1}(B_1) + #{k > m_1 : f_k vanishes at the node}``."""
    P = poly_from_sigma(list(phi))
    x = sol.diag[0] if sol.diag else None
    if x is None:
        return True
    if not x.exact:
        P = _to_float_poly(P)
    val = P(x)
    first = sol.mjf.spec.eigenvalues[0]
    m1 = first.multiplicity
    bound = d_indices(first.blocks)[-1] + sum(1 for p in sol.pattern[m1 - 1:] if p == 0)
    o = val.order(JET_TOL if not x.exact else tol)
    return isinstance(o, AtLeast) or o >= bound
