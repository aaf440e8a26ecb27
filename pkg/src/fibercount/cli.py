"""Command line entry point: ``fibercount {classify,solve,verify,lemma-fuzz}``.

Exit codes: 0 success, 1 property violation, 2 input error, 3 structural
mismatch between the coefficients and the classifier's witnesses.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import lattice as lc
from .classifier import PolytopeCollection, Verdict, classify
from .errors import (DegenerateStrip, InvalidSupport, MalformedCollection, UnalignedExponent,
                     ZeroPolynomial, ZeroVector)
from .fibers import BinomialFactor, compute_C1, sample_generic, verify_codim1
from .poly import PolynomialMap, SparsePolynomial
from .report import (ProblemFileError, cnum, dumps, load_problem, make_report,
                     render_c1, render_classification)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_STRUCTURE = 3

MAX_GENERATORS = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path):
    try:
        return load_problem(path)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc.strerror}") from None
    except ProblemFileError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from None


def _classify(pf):
    try:
        coll = PolytopeCollection.from_supports([lc.SupportSet(s, pf.n) for s in pf.supports])
        return coll, classify(coll)
    except (MalformedCollection, InvalidSupport) as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None


def _map(pf) -> PolynomialMap:
    return PolynomialMap([SparsePolynomial(dict(zip(s, c)), pf.n)
                          for s, c in zip(pf.supports, pf.coefficients)])


def _ints(text: str, n: int, name: str) -> tuple:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CliError(EXIT_INPUT, f"--{name}: expected comma-separated integers") from None
    if len(vals) != n:
        raise CliError(EXIT_INPUT, f"--{name}: expected {n} entries, got {len(vals)}")
    return vals


def _complexes(text: str, count: int, name: str) -> list:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise CliError(EXIT_INPUT, f"--{name}: expected comma-separated numbers") from None
    if len(vals) != 2 * count:
        raise CliError(EXIT_INPUT, f"--{name}: expected {2 * count} numbers (re,im pairs), got {len(vals)}")
    return [complex(vals[2 * i], vals[2 * i + 1]) for i in range(count)]


def _direction(args, pf, cl):
    u = _ints(args.u, pf.n, "u") if args.u else cl.u
    if u is not None:
        try:
            if lc.primitive_vector(u) != tuple(u):
                raise CliError(EXIT_INPUT, f"--u: {list(u)} is not primitive")
        except ZeroVector:
            raise CliError(EXIT_INPUT, "--u: zero vector") from None
    return u


def cmd_classify(args):
    pf = _load(args.path)
    _, cl = _classify(pf)
    return make_report("classify", pf.digest, classification=render_classification(cl),
                       diagnostics=pf.notes), EXIT_OK


def cmd_solve(args):
    pf = _load(args.path)
    coll, cl = _classify(pf)
    params = {"seed": args.seed, "samples": args.samples, "tol": args.tol}
    diags = list(pf.notes)
    rendered = render_classification(cl)
    if cl.verdict != Verdict.NONEMPTY_C1:
        diags.append(f"solve skipped: verdict {cl.verdict.value} ({cl.reason.value})")
        return make_report("solve", pf.digest, classification=rendered, parameters=params,
                           diagnostics=diags), EXIT_OK
    u = _direction(args, pf, cl)
    v = _ints(args.v, pf.n, "v") if args.v else cl.v
    if pf.coefficients is None:
        f = sample_generic(coll, args.seed)
        source = "sample_generic"
    else:
        f = _map(pf)
        source = "file"
    try:
        res = compute_C1(f, u, v, samples=args.samples, tol=args.tol, seed=args.seed)
    except (UnalignedExponent, DegenerateStrip, ZeroPolynomial) as exc:
        raise CliError(EXIT_STRUCTURE, f"decomposition failed: {exc}") from None
    c1 = render_c1(res, cl.predicted_count)
    c1["coefficients_source"] = source
    diags.extend(res.warnings)
    code = EXIT_OK
    if not c1["match"]:
        diags.append(f"warning: found {c1['count']} points, predicted {cl.predicted_count}; "
                     "the coefficients are not generic")
    if c1["count"] > cl.predicted_count:
        diags.append("violation: more points than the upper bound allows")
        code = EXIT_PROPERTY
    failed = [i for i, p in enumerate(res.points) if not p.verified]
    if failed:
        diags.append(f"violation: points {failed} failed fiber verification at tol {args.tol}")
        code = EXIT_PROPERTY
    return make_report("solve", pf.digest, classification=rendered, c1=c1, parameters=params,
                       diagnostics=diags), code


def cmd_verify(args):
    pf = _load(args.path)
    if pf.coefficients is None:
        raise CliError(EXIT_INPUT, f"{args.path}: verify needs coefficients in the problem file")
    _, cl = _classify(pf)
    kappa = _complexes(args.kappa, pf.k, "kappa")
    (t0,) = _complexes(args.t0, 1, "t0")
    if t0 == 0:
        raise CliError(EXIT_INPUT, "--t0: must be nonzero")
    u = _direction(args, pf, cl)
    if u is None:
        raise CliError(EXIT_STRUCTURE, f"no binomial direction: classification gave {cl.reason.value}; "
                                       "pass --u explicitly")
    res = verify_codim1(_map(pf), kappa, BinomialFactor(tuple(u), t0), args.samples, args.tol, args.seed)
    verification = {
        "kappa": [cnum(z) for z in kappa],
        "t0": cnum(t0),
        "u": list(u),
        "passed": res.passed,
        "max_residual": res.max_residual,
    }
    params = {"seed": args.seed, "samples": args.samples, "tol": args.tol}
    return make_report("verify", pf.digest, classification=render_classification(cl),
                       verification=verification, parameters=params,
                       diagnostics=pf.notes), EXIT_OK if res.passed else EXIT_PROPERTY


def _random_support(rng, dim, max_coord, segments):
    size = 2 if segments else int(rng.integers(1, MAX_GENERATORS + 1))
    size = min(size, (max_coord + 1) ** dim)
    pts = set()
    while len(pts) < size:
        pts.add(tuple(int(c) for c in rng.integers(0, max_coord + 1, dim)))
    return lc.SupportSet(pts, dim)


def _load_pairs(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
        data = json.loads(raw)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INPUT, f"{path}: not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise CliError(EXIT_INPUT, f"{path}: expected a list of [A, B] generator lists")
    pairs = []
    for i, pair in enumerate(data):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise CliError(EXIT_INPUT, f"{path}: pairs[{i}]: expected [A, B]")
        try:
            A, B = (lc.SupportSet(side) for side in pair)
        except (InvalidSupport, TypeError, ValueError) as exc:
            raise CliError(EXIT_INPUT, f"{path}: pairs[{i}]: {exc}") from None
        if A.ambient_dim != B.ambient_dim:
            raise CliError(EXIT_INPUT, f"{path}: pairs[{i}]: A and B have different dimensions")
        pairs.append((A, B))
    return pairs, raw


def cmd_lemma_fuzz(args):
    if args.trials < 1:
        raise CliError(EXIT_INPUT, "--trials must be >= 1")
    if not 1 <= args.dim <= 4:
        raise CliError(EXIT_INPUT, "--dim must be between 1 and 4")
    if not 0 <= args.max_coord <= 10:
        raise CliError(EXIT_INPUT, "--max-coord must be between 0 and 10")
    if args.force_segments and args.max_coord < 1:
        raise CliError(EXIT_INPUT, "--force-segments needs --max-coord >= 1")
    params = {"trials": args.trials, "dim": args.dim, "max_coord": args.max_coord,
              "seed": args.seed, "force_segments": args.force_segments}
    digest = hashlib.sha256(json.dumps(params, sort_keys=True).encode())
    pairs = []
    if args.pairs:
        pairs, raw = _load_pairs(args.pairs)
        digest.update(raw)
    for child in np.random.SeedSequence(args.seed).spawn(args.trials):
        rng = np.random.default_rng(child)
        pairs.append(tuple(_random_support(rng, args.dim, args.max_coord, args.force_segments)
                           for _ in range(2)))

    stats = {"trials": len(pairs), "inequality_checks": 0, "inequality_passes": 0,
             "equality_cases": 0, "sum_in_line_cases": 0, "iff_checks": 0, "iff_passes": 0}
    violations = []
    for A, B in pairs:
        r = lc.lemma_difr2_check(lc.LatticePolytope(A), lc.LatticePolytope(B))
        stats["inequality_checks"] += 1
        ok = r.sigma >= r.alpha + r.beta - 1
        stats["inequality_passes"] += ok
        stats["equality_cases"] += r.equality
        stats["sum_in_line_cases"] += r.sum_in_line
        iff_ok = True
        if r.alpha >= 2 and r.beta >= 2:
            stats["iff_checks"] += 1
            iff_ok = r.equality == r.sum_in_line
            stats["iff_passes"] += iff_ok
        if not (ok and iff_ok):
            violations.append({"A": [list(p) for p in A], "B": [list(p) for p in B],
                               "sigma": r.sigma, "alpha": r.alpha, "beta": r.beta,
                               "equality": r.equality, "sum_in_line": r.sum_in_line})
    stats["violations"] = violations
    diags = [f"violation: {len(violations)} pair(s) break the lattice point inequality "
             "or its equality criterion"] if violations else []
    report = make_report("lemma-fuzz", "sha256:" + digest.hexdigest(), lemma_fuzz=stats,
                         parameters=params, diagnostics=diags)
    return report, EXIT_PROPERTY if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibercount", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide whether C1 is nonempty for generic maps")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="compute C1 for file or generic coefficients")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--u", help="override the binomial direction, e.g. 1,1,1")
    p.add_argument("--v", help="override the base point of the second line, e.g. 1,0,0")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check that f is constant on {x^u = t0}")
    p.add_argument("path")
    p.add_argument("--kappa", required=True, help="re,im,re,im,...")
    p.add_argument("--t0", required=True, help="re,im")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--u", help="override the binomial direction")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemma-fuzz", help="fuzz the lattice point inequality for Minkowski sums")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--max-coord", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force-segments", action="store_true",
                   help="every random polytope is a segment between two distinct points")
    p.add_argument("--pairs", help="JSON file with extra [A, B] generator lists to check")
    p.set_defaults(func=cmd_lemma_fuzz)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "tol", 1.0) <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        report, code = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    text = dumps(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
