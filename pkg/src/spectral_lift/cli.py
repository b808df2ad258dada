"""Command-line front end.

Problem files are JSON objects ``{"version": "spectral-lift/1", "kind": ..., "payload": ...}``;
``-`` reads stdin.  Output is deterministic JSON on stdout.  Exit codes:
0 success, 2 mathematical failure (conditions refuted, certificate red),
1 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .conditions import check_conditions_multi
from .counterexample import contradiction_report
from .errors import ConditionsFail, FrameZeroViolation, JetEquationError, SpectralLiftError
from .jordan import JordanSpec, modified_jordan, spec_from_matrix
from .lifting import LiftProblem, _default_trunc, lift, verify_lift
from .matrix import matrix_from_json
from .rational import RationalMatrix
from .scalars import GaussQ, scalar_from_json
from .selftest import run_selftest
from .spectral import SigmaVector

VERSION_TAG = "spectral-lift/1"
KINDS = ("check", "lift", "verify", "mjf", "counterexample")

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


def load_problem(path: str, kind: str):
    """Read and validate a problem file; returns the payload."""
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise UsageError("problem file must be a JSON object")
    extra = set(obj) - {"version", "kind", "payload"}
    if extra:
        raise UsageError(f"unknown top-level fields {sorted(extra)}")
    if obj.get("version") != VERSION_TAG:
        raise UsageError(f"unsupported version {obj.get('version')!r}; expected {VERSION_TAG!r}")
    if obj.get("kind") != kind:
        raise UsageError(f"problem kind {obj.get('kind')!r} does not match command {kind!r}")
    if not isinstance(obj.get("payload"), dict):
        raise UsageError("payload must be a JSON object")
    return obj["payload"]


def problem_file(kind: str, payload) -> dict:
    return {"version": VERSION_TAG, "kind": kind, "payload": payload}


def emit(obj, out=None):
    out = out or sys.stdout
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _overrides(args):
    return dict(mode=args.mode, trunc=args.trunc, tol=args.tol, seed=args.seed, samples=args.samples)


def _problem(payload, args) -> LiftProblem:
    try:
        return LiftProblem.from_json(payload, **_overrides(args))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad problem payload: {exc}") from exc


# -- commands ----------------------------------------------------------------------------

def cmd_check(args) -> int:
    problem = _problem(load_problem(args.file, "check"), args)
    K = problem.trunc or _default_trunc(problem.n, problem.nodes)
    phis = problem.phi
    if problem.mode == "float":
        phis = [p.to_float() for p in phis]
    report = check_conditions_multi(phis, problem.nodes, K, problem.tol)
    emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_lift(args) -> int:
    problem = _problem(load_problem(args.file, "lift"), args)
    try:
        res = lift(problem)
    except ConditionsFail as exc:
        emit({"error": "conditions-fail", "message": str(exc),
              "report": exc.report.to_json() if exc.report is not None else None})
        return EXIT_FAIL
    except (JetEquationError, FrameZeroViolation) as exc:
        emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_FAIL
    emit(res.to_json())
    return EXIT_OK if res.certificate.ok else EXIT_FAIL


def _decode_phi_matrix(obj):
    entries = obj.get("entries") if isinstance(obj, dict) else None
    if entries and entries[0] and isinstance(entries[0][0], dict) and "num" in entries[0][0]:
        return RationalMatrix.from_json(obj)
    return matrix_from_json(obj)


def cmd_verify(args) -> int:
    payload = load_problem(args.file, "verify")
    extra = set(payload) - {"problem", "Phi", "targets"}
    if extra or "problem" not in payload or "Phi" not in payload:
        raise UsageError("verify payload needs 'problem' and 'Phi' (optional 'targets')")
    problem = _problem(payload["problem"], args)
    try:
        Phi = _decode_phi_matrix(payload["Phi"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad Phi: {exc}") from exc
    alphas = [a for a, _ in problem.nodes]
    if isinstance(Phi, RationalMatrix):
        phi = problem.phi
    else:
        if len(alphas) != 1:
            raise UsageError("a series-valued Phi belongs to a single node")
        trunc = Phi.sample.trunc
        phi = SigmaVector([p.to_series(alphas[0], trunc) for p in problem.phi])
        if not Phi.exact:
            phi = SigmaVector([c.to_float() for c in phi])
    if "targets" in payload:
        targets = [matrix_from_json(t) for t in payload["targets"]]
        cert = verify_lift(Phi, phi, alphas, targets, problem.tol, problem.samples)
    else:
        cert = verify_lift(Phi, phi, alphas, [], problem.tol, problem.samples)
        cert.node_values_ok = _similar_to_targets(Phi, problem.nodes)
        cert.notes = [n for n in cert.notes if not n.startswith("no targets")]
        cert.notes.append("node values compared with the targets up to similarity")
    emit(cert.to_json())
    return EXIT_OK if cert.ok else EXIT_FAIL


def _similar_to_targets(Phi, nodes) -> bool:
    for alpha, spec in nodes:
        V = Phi.evaluate(alpha) if isinstance(Phi, RationalMatrix) else Phi.value()
        if not V.exact:
            return False  # similarity classes are undecidable in floating point
        try:
            got = spec_from_matrix(V, [e.value for e in spec.eigenvalues])
        except (SpectralLiftError, ValueError):  # spectrum differs from the target
            return False
        if sorted(got.eigenvalues, key=_key) != sorted(spec.eigenvalues, key=_key):
            return False
    return True


def _key(e):
    return (e.value.re, e.value.im)


def cmd_mjf(args) -> int:
    payload = load_problem(args.file, "mjf")
    try:
        spec = JordanSpec.from_json(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad Jordan spec: {exc}") from exc
    res = modified_jordan(spec)
    out = res.to_json()
    out["certificate"] = {"A_T_equals_T_A_prime": res.A @ res.transition == res.transition @ res.A_prime}
    emit(out)
    return EXIT_OK


def _parse_lambda(text: str) -> GaussQ:
    try:
        return scalar_from_json(json.loads(text)) if text.lstrip().startswith("{") else GaussQ(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad eigenvalue {text!r}") from exc


def cmd_counterexample(args) -> int:
    if args.file is not None:
        payload = load_problem(args.file, "counterexample")
        extra = set(payload) - {"k", "l", "lambda1", "lambda2", "trials"}
        if extra:
            raise UsageError(f"unknown counterexample fields {sorted(extra)}")
        k, l = int(payload["k"]), int(payload["l"])
        lam1 = scalar_from_json(payload.get("lambda1", 0))
        lam2 = scalar_from_json(payload.get("lambda2", "1/2"))
        trials = int(payload.get("trials", args.trials))
    else:
        if args.k is None or args.l is None:
            raise UsageError("counterexample needs K and L (or --file)")
        k, l = args.k, args.l
        lam1, lam2 = _parse_lambda(args.lambda1), _parse_lambda(args.lambda2)
        trials = args.trials
    rep = contradiction_report(k, l, lam1, lam2, trials, random.Random(args.seed or 0))
    if args.table:
        print(rep.table())
    else:
        emit(rep.to_json())
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_selftest(args.seed or 0, quick=args.quick)
    if args.json:
        emit({"seed": args.seed or 0, "quick": args.quick, "suites": [r.to_json() for r in results],
              "pass": all(r.passed for r in results)})
    else:
        for r in results:
            print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectral-lift", description="Local lifting conditions and liftings of maps into the symmetrized polydisc.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--mode", choices=("auto", "exact", "float"), default=None)
        sp.add_argument("--trunc", type=int, default=None, help="series truncation K")
        sp.add_argument("--tol", type=float, default=None, help="float tolerance")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--samples", type=int, default=None, help="off-node cyclicity samples")

    for name, fn, text in (
        ("check", cmd_check, "check the local lifting conditions"),
        ("lift", cmd_lift, "construct a lift with its certificate"),
        ("verify", cmd_verify, "re-check a lift independently"),
        ("mjf", cmd_mjf, "modified Jordan form of a Jordan spec"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("file", help="problem file, or - for stdin")
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("counterexample", help="order comparison for the direct sum of two B blocks")
    sp.add_argument("k", type=int, nargs="?")
    sp.add_argument("l", type=int, nargs="?")
    sp.add_argument("lambda1", nargs="?", default="0")
    sp.add_argument("lambda2", nargs="?", default="1/2")
    sp.add_argument("--file", default=None)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--table", action="store_true", help="human-readable line instead of JSON")
    common(sp)
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("selftest", help="run the seeded invariant suites")
    sp.add_argument("--quick", action="store_true")
    sp.add_argument("--json", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors; remap to 1
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SpectralLiftError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
