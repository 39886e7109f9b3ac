"""Command-line front end. JSON reports go to stdout, logs to stderr.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error,
3 scale or degeneracy error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .acceptance import DEFAULT_SEED, run_battery
from .determinants import (GENERIC, SYMMETRIC, DegenerateSampleError, ScaleError, artinian_lefschetz_check,
                           build_determinant, fiber_rank_check, propn2_check, resolution_check,
                           restriction_vanishing, semigeneric_section)
from .field import MERSENNE31, FieldSpec
from .geometry import cohomT, cover_solutions, eulerS_four_term, eulerS_h_twist
from .groebner import DegreeBoundExceeded, Ideal, minimal_free_resolution
from .poly import PolynomialSyntaxError, format_polynomial, parse_polynomial
from .quiver import semistability_scan
from .stability import jacobian_data, stability_check

SCHEMA = "logtan-report/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCALE = 0, 1, 2, 3

log = logging.getLogger("logtan")


class UsageError(Exception):
    pass


# -------------------------------------------------------------- helpers

def _field(args) -> FieldSpec:
    if args.rationals:
        return FieldSpec.rationals()
    try:
        return FieldSpec.prime(args.prime)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _polys(args, field: FieldSpec) -> list:
    texts = list(args.poly or [])
    if args.input:
        lines = Path(args.input).read_text().splitlines()
        texts += [ln for ln in (x.strip() for x in lines) if ln and not ln.startswith("#")]
    if not texts:
        raise UsageError("no polynomial given (use --poly or --input)")
    if args.vars is None:
        raise UsageError("--vars is required with polynomial input")
    return [parse_polynomial(t, args.vars, field) for t in texts]


# ---------------------------------------------------------- subcommands

def cmd_stability(args, field):
    (f,) = _polys(args, field)[:1]
    h = jacobian_data(f)
    rep = stability_check(h).to_json()
    return {"F": format_polynomial(f), **rep}, True


def cmd_resolution(args, field):
    if args.n is not None:
        inst = build_determinant(args.n, args.flavor, field)
        chk = resolution_check(inst)
        return {"n": args.n, "flavor": args.flavor, **chk.to_json()}, chk.match
    gens = _polys(args, field)
    res = minimal_free_resolution(gens, args.steps)
    return {"generators": [format_polynomial(g) for g in gens], **res.to_json()}, True


def cmd_hilbert(args, field):
    gens = _polys(args, field)
    ideal = Ideal(gens)
    hf = ideal.hilbert_function(args.max_degree)
    dim, deg = ideal.dim_deg()
    return {"generators": [format_polynomial(g) for g in gens], "hilbert": hf.to_json(),
            "projDim": dim, "degree": deg,
            "hilbertPolynomial": [str(c) for c in hf.poly_coeffs]}, True


def cmd_det_suite(args, field):
    n, flavor, seed = args.n, args.flavor, args.seed
    inst = build_determinant(n, flavor, field)
    checks = [{"name": "partials-are-minors", "n": n, "flavor": flavor, "seed": None, "pass": True}]
    try:
        chk = resolution_check(inst)
        checks.append({"name": "resolution", "n": n, "flavor": flavor, "seed": None, "pass": chk.match,
                       **chk.to_json()})
    except ScaleError as e:
        log.warning("resolution skipped: %s", e)
    if flavor == SYMMETRIC:
        r = restriction_vanishing(inst, seed)
        checks.append({"name": "restriction-vanishing", "seed": seed, **r.to_json()})
    else:
        if field.p is not None or n <= 3:
            sec = semigeneric_section(n, seed, field)
            p2 = propn2_check(sec)
            checks.append({"name": "propn2", "n": n, "flavor": flavor, "seed": seed,
                           "pass": p2.equal and p2.containment, **p2.to_json()})
        if n >= 3:
            lef = artinian_lefschetz_check(n, "semigeneric", seed, field)
            checks.append({"name": "lefschetz-semigeneric", "flavor": flavor, "pass": lef.iso and lef.dims_ok,
                           **lef.to_json()})
            r = restriction_vanishing(inst, seed)
            checks.append({"name": "restriction-vanishing", **{k: v for k, v in r.to_json().items()
                                                               if k != "lefschetz"}})
        if field.p is not None:
            for k in range(n):
                fr = fiber_rank_check(n, k, args.trials, field, seed)
                checks.append({"name": "fiber-rank", "flavor": flavor, "seed": seed, **fr.to_json()})
    ok = all(c["pass"] for c in checks)
    return {"n": n, "flavor": flavor, "checks": checks}, ok


def cmd_semigeneric(args, field):
    sec = semigeneric_section(args.n, args.seed, field, max_retries=args.retries)
    p2 = propn2_check(sec)
    return {"section": sec.to_json(), "propn2": p2.to_json()}, p2.equal and p2.containment


def cmd_quiver(args, field):
    scan = semistability_scan(args.n)
    return scan.to_json(), scan.strictly_stable


def cmd_cohomT(args, field):
    out = {"i": args.i, "j": args.j, "dims": cohomT(args.i, args.j).to_json()}
    if args.n is not None:
        out["n"] = args.n
        out["eulerS"] = eulerS_h_twist(args.n, args.i, args.j)
        out["eulerSFourTerm"] = eulerS_four_term(args.n, args.i, args.j)
    return out, True


def cmd_cover(args, field):
    try:
        sols = cover_solutions(args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    ok = sols.nontrivial == {(1, 0), (-1, args.n - 1)}
    return sols.to_json(), ok


def cmd_selftest(args, field):
    results = []
    for r in run_battery(args.seed, args.only):
        print(r.line(), file=sys.stderr)
        results.append(r.to_json())
    return {"criteria": results}, all(r["pass"] for r in results)


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("field and reproducibility")
    g.add_argument("--rationals", action="store_true", help="work over the rationals")
    g.add_argument("--prime", type=int, default=MERSENNE31, help="prime field characteristic (default 2^31-1)")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
    g.add_argument("--output", "-o", help="write the JSON report to this path instead of stdout")
    g.add_argument("--verbose", "-v", action="count", default=0)


def _poly_input(p: argparse.ArgumentParser, many: bool = False):
    p.add_argument("--poly", action="append",
                   help="polynomial in x0, x1, ...; repeatable" if many else "polynomial in x0, x1, ...")
    p.add_argument("--input", help="file with one polynomial per line")
    p.add_argument("--vars", type=int, help="number of variables")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logtan", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"logtan {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stability", help="slope-stability criteria for T_D",
                       description="Cone obstruction, smoothness, vanishing of H^0(T_D(q)) with "
                                   "q = floor((d-1)(s+1)/N), and the bound singDeg < (d-q-1)(d-1)^(N-1) for "
                                   "isolated singularities of a hypersurface F = 0.")
    _poly_input(p)
    _common(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("resolution", help="minimal graded free resolution",
                       description="Betti table of R/(gens), or of T_D for a generic or symmetric "
                                   "determinant compared with the Gulliksen-Negard and "
                                   "Goto-Jozefiak-Tachibana tables.")
    _poly_input(p, many=True)
    p.add_argument("--steps", type=int, default=8, help="maximal number of differentials")
    p.add_argument("--n", type=int, help="determinant size (instead of --poly)")
    p.add_argument("--flavor", choices=(GENERIC, SYMMETRIC), default=GENERIC)
    _common(p)
    p.set_defaults(func=cmd_resolution)

    p = sub.add_parser("hilbert", help="Hilbert function, dimension and degree",
                       description="Hilbert function of R/I, projective dimension and degree of V(I).")
    _poly_input(p, many=True)
    p.add_argument("--max-degree", type=int, default=6)
    _common(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("det-suite", help="determinant checks",
                       description="Betti tables, the semigeneric ideal identity I_L = x0*m0^(n-2) + m0^(n-1), "
                                   "quadratic Lefschetz maps on Artinian reductions, restriction vanishing and "
                                   "the fiber-rank formula n^2 + k^2 - 2.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", choices=(GENERIC, SYMMETRIC), default=GENERIC)
    p.add_argument("--trials", type=int, default=5, help="fiber-rank trials per k")
    _common(p)
    p.set_defaults(func=cmd_det_suite)

    p = sub.add_parser("semigeneric", help="certified semigeneric section",
                       description="Sample M_L = M_0 + x0*E_11, certify it and check I_L = x0*m0^(n-2) + m0^(n-1).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--retries", type=int, default=25)
    _common(p)
    p.set_defaults(func=cmd_semigeneric)

    p = sub.add_parser("quiver", help="King-slope scan of the principal-parts quiver",
                       description="Exhaustive semistability scan of the principal-parts representation on "
                                   "P^1 x P^1 over all downward-closed supports.")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("cohomT", help="line-bundle cohomology on T",
                       description="h^k(O_T(i h + j l)) on T = P(O(1) + O) over P^2; with --n also the Euler "
                                   "characteristic of O_S(h + i h + j l) on the blown-up plane.")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--n", type=int)
    _common(p)
    p.set_defaults(func=cmd_cohomT)

    p = sub.add_parser("cover", help="divisor arithmetic for the 2:1 determinant cover",
                       description="Integer solutions of y >= 0, y >= (1-n)x, x*C(n,2) + y*n = C(n,2).")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("selftest", help="run the acceptance battery",
                       description="All ten acceptance criteria; one PASS/FAIL line each on stderr.")
    p.add_argument("--only", type=int, action="append", help="run only this criterion (repeatable)")
    _common(p)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        field = _field(args)
        t0 = time.perf_counter()
        result, ok = args.func(args, field)
        log.info("%s finished in %.2fs", args.command, time.perf_counter() - t0)
    except (UsageError, PolynomialSyntaxError, IndexError, OSError) as e:
        print(f"logtan: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ScaleError, DegenerateSampleError, DegreeBoundExceeded) as e:
        print(f"logtan: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_SCALE
    except ValueError as e:
        print(f"logtan: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = {"schema": SCHEMA, "command": args.command, "field": field.to_json(), "seed": args.seed,
              "pass": bool(ok), "result": result}
    text = json.dumps(report, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
