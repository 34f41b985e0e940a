"""Command-line front end.

Subcommands:

* ``dist``      exact finite-n or limiting corank PMFs
* ``sample``    one seeded draw from a model spec (JSON file)
* ``mc``        Monte Carlo corank estimation against a reference law
* ``verify``    run a named verification suite (or ``all``)
* ``chain``     exact corank-chain computations
* ``structure`` structure measure of a vector under a model's entry laws

All output is JSON on stdout; ``--csv`` additionally writes a PMF table
with columns corank, mass_num, mass_den.  The exit code is 0 iff every
verification requested in the invocation passed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .distributions import (CorankPMF, limit_alt_pmf, limit_rect_pmf,
                            limit_sym_pmf, limit_square_pmf, tv_distance,
                            uniform_alt_pmf, uniform_rect_pmf, uniform_sym_pmf,
                            uniform_square_pmf)
from .errors import FqRankError
from .field import field_new
from .matrix import dumps_matrix
from .models import ModelSpec, sample, validate_conditions
from . import chain as chain_mod
from . import harness

DIST_KINDS = ("square", "rect", "symmetric", "alternating")


def _write_csv(path: str, pmf: CorankPMF) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["corank", "mass_num", "mass_den"])
        for k, mass in pmf.support:
            w.writerow([k, mass.numerator, mass.denominator])


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def _load_spec(path: str) -> ModelSpec:
    with open(path) as fh:
        return ModelSpec.from_json(fh.read())


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_dist(args) -> int:
    f = field_new(args.q)
    tol = Fraction(args.tol).limit_denominator(10**40) if args.tol else Fraction(1, 10**30)
    if args.limit:
        if args.kind == "square":
            pmf = limit_square_pmf(f, tol)
        elif args.kind == "rect":
            pmf = limit_rect_pmf(args.m, f, tol)
        elif args.kind == "symmetric":
            pmf = limit_sym_pmf(f, tol)
        else:
            pmf = limit_alt_pmf(f, args.parity, tol)
    else:
        if args.n is None:
            raise FqRankError("--n is required without --limit")
        if args.kind == "square":
            pmf = uniform_square_pmf(args.n, f)
        elif args.kind == "rect":
            pmf = uniform_rect_pmf(args.n, args.m, f)
        elif args.kind == "symmetric":
            pmf = uniform_sym_pmf(args.n, f)
        else:
            pmf = uniform_alt_pmf(args.n, f)
    if args.csv:
        _write_csv(args.csv, pmf)
    _emit(json.loads(pmf.to_json()))
    return 0


def cmd_sample(args) -> int:
    spec = _load_spec(args.spec)
    M = sample(spec, args.seed, args.trial)
    out = {
        "matrix": dumps_matrix(M),
        "corank": M.rows - M.rank(),
        "conditions": validate_conditions(spec, args.alpha),
    }
    _emit(out)
    return 0


def cmd_mc(args) -> int:
    spec = _load_spec(args.spec)
    result = harness.mc_corank(spec, args.trials, args.seed)
    out = {
        "trials": result.trials,
        "seed": result.seed,
        "counts": {str(k): v for k, v in sorted(result.counts.items())},
        "empirical": json.loads(result.empirical.to_json()),
        "ci_half_widths": {str(k): v for k, v in sorted(result.ci_half_widths.items())},
        "noise_floor": result.noise_floor(),
    }
    ok = True
    if args.ref:
        f = spec.field
        tol = Fraction(1, 10**30)
        if args.ref == "square":
            ref = limit_square_pmf(f, tol)
        elif args.ref == "rect":
            ref = limit_rect_pmf(spec.m, f, tol)
        elif args.ref == "symmetric":
            ref = limit_sym_pmf(f, tol)
        else:
            n = spec.n if spec.kind != "gl-corner" else spec.n_prime
            ref = limit_alt_pmf(f, "even" if n % 2 == 0 else "odd", tol)
        report = harness.tv_report(result, ref, threshold=args.threshold,
                                   claim_id=f"mc-vs-limit-{args.ref}")
        out["report"] = report.to_dict()
        ok = report.passed
    if args.csv:
        _write_csv(args.csv, result.empirical)
    _emit(out)
    return 0 if ok else 1


def cmd_chain(args) -> int:
    f = field_new(args.q)
    n = args.n if args.kind == "iid-column" else None
    spec = chain_mod.ChainSpec(args.kind, f, n=n)
    if args.hit_zero:
        prob = chain_mod.hit_zero_prob(spec, args.x0, args.steps)
        _emit({"hit_zero_prob": str(prob), "hit_zero_prob_float": float(prob)})
    elif args.path:
        path, prob = chain_mod.most_likely_positive_path(spec, args.x0, args.steps)
        _emit({"path": list(path), "probability": str(prob),
               "probability_float": float(prob)})
    elif args.planted:
        pmf = chain_mod.planted_pmf(args.kind, args.x0, args.steps, f)
        if args.csv:
            _write_csv(args.csv, pmf)
        _emit(json.loads(pmf.to_json()))
    else:
        pmf = chain_mod.evolve(spec, chain_mod.delta_pmf(args.x0), args.steps)
        if args.csv:
            _write_csv(args.csv, pmf)
        _emit(json.loads(pmf.to_json()))
    return 0


def cmd_structure(args) -> int:
    from .structure import rho

    spec = _load_spec(args.spec)
    a = tuple(int(x) for x in args.vector.split(","))
    dists = [spec.default_dist()] * len(a)
    F = spec.type_f.sets[0] if spec.type_f is not None else ()
    report = rho(a, dists, F=F, K=args.K)
    out = {
        "rho": report.rho,
        "per_t_products": list(report.per_t_products),
        "a": list(report.a),
        "F": sorted(report.F),
        "K": report.K,
        "q": report.q,
    }
    if report.T_sets is not None:
        out["T_sets"] = [sorted(T) for T in report.T_sets]
        if args.M is not None:
            out["meets_unstructured_condition"] = \
                report.meets_unstructured_condition(args.M)
    _emit(out)
    return 0


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _suite_formulas() -> list:
    reports = []
    for q in (2, 3):
        f = field_new(q)
        for n in (1, 2, 3):
            reports.append(harness.formula_enumeration_check("iid-square", n, f))
            reports.append(harness.formula_enumeration_check("symmetric", n, f))
        reports.append(harness.formula_enumeration_check("iid-rect", 2, f, m=1))
    f3 = field_new(3)
    for n in (2, 3, 4):
        reports.append(harness.formula_enumeration_check("alternating", n, f3))
    return reports


def _suite_chain() -> list:
    reports = []
    for q in (2, 3, 5):
        f = field_new(q)
        for n in (1, 4, 6):
            reports.append(harness.chain_consistency_check("symmetric", n, f))
            reports.append(harness.chain_consistency_check("iid-column", n, f))
            if q % 2:
                reports.append(harness.chain_consistency_check("alternating", n, f))
    for q in (5, 7, 11):
        f = field_new(q)
        for m0 in (1, 2, 4):
            for s in (8, 10, 12):
                reports.append(harness.hit_zero_bound_check("symmetric", m0, s, f))
    for q in (2, 3):
        f = field_new(q)
        for x0 in (1, 2, 3):
            for steps in (4, 7):
                reports.append(harness.path_claim_check("symmetric", x0, steps, f))
                if q % 2:
                    reports.append(harness.path_claim_check("alternating", x0, steps, f))
    f7 = field_new(7)
    reports.append(harness.planted_tv_check("symmetric", 4, 36, f7))
    reports.append(harness.planted_tv_check("alternating", 4, 36, f7))
    return reports


def _suite_sandwich() -> list:
    reports = []
    for q in (2, 3, 4, 5):
        f = field_new(q)
        for n in range(4, 9):
            reports.append(harness.fg_sandwich_check("square", n, f))
    for q in (2, 3):
        f = field_new(q)
        for n in range(4, 8):
            reports.append(harness.fg_sandwich_check("symmetric", n, f))
    for q in (3, 5):
        f = field_new(q)
        for n in range(4, 8):
            reports.append(harness.fg_sandwich_check("alternating", n, f))
    return reports


def _suite_gl() -> list:
    return [
        harness.gl_uniformity_check(2, field_new(2), 20000, seed=11),
        harness.gl_uniformity_check(2, field_new(3), 20000, seed=12),
        harness.submatrix_fullrank_check(8, 3, 6, 4000, seed=13, f=field_new(2)),
        harness.submatrix_fullrank_check(6, 2, 2, 2000, seed=14, f=field_new(3)),
        harness.odlyzko_check(6, 3, 0, harness.EntryDist(
            tuple(Fraction(1, 5) for _ in range(5))), 4000, 15, field_new(5)),
    ]


def _suite_counting() -> list:
    return [
        harness.zero_diag_count_check(2, field_new(2)),
        harness.zero_diag_count_check(3, field_new(2)),
        harness.zero_diag_count_check(3, field_new(3)),
    ]


def _suite_structure() -> list:
    return [
        harness.unconc_uniform_suite(50, seed=21),
        harness.decoupling_suite(30, seed=22),
        harness.threshold_parseval_check(29, seed=23),
    ]


def _suite_theorems() -> list:
    reports = []
    f7, f5 = field_new(7), field_new(5)
    tol = Fraction(1, 10**30)
    spec = ModelSpec(kind="gl-minus-identity", field=f7, n=40)
    res = harness.mc_corank(spec, 4000, seed=31)
    reports.append(harness.tv_report(res, limit_square_pmf(f7, tol),
                                     threshold=0.04, claim_id="gl-minus-identity-q7-n40"))
    spec = ModelSpec(kind="gl-corner", field=f5, n=40, n_prime=20)
    res = harness.mc_corank(spec, 4000, seed=32)
    reports.append(harness.tv_report(res, limit_square_pmf(f5, tol),
                                     threshold=0.04, claim_id="gl-corner-q5-n40-nprime20"))
    return reports


SUITES = {
    "formulas": _suite_formulas,
    "chain": _suite_chain,
    "sandwich": _suite_sandwich,
    "gl": _suite_gl,
    "counting": _suite_counting,
    "structure": _suite_structure,
    "theorems": _suite_theorems,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        reports.extend(SUITES[name]())
    ok = all(r.passed for r in reports)
    _emit({
        "suites": names,
        "passed": ok,
        "n_checks": len(reports),
        "n_failed": sum(not r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    })
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fqrank",
                                description="finite-field random-matrix laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="exact corank PMFs")
    d.add_argument("kind", choices=DIST_KINDS)
    d.add_argument("--n", type=int)
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--m", type=int, default=0, help="extra columns (rect)")
    d.add_argument("--parity", choices=("even", "odd"), default="even",
                   help="parity of the alternating limit law")
    d.add_argument("--limit", action="store_true", help="limiting law instead of finite n")
    d.add_argument("--tol", type=float, default=None, help="limit truncation tolerance")
    d.add_argument("--csv")
    d.set_defaults(func=cmd_dist)

    s = sub.add_parser("sample", help="one seeded draw from a model spec")
    s.add_argument("spec", help="path to a ModelSpec JSON file")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--trial", type=int, default=0)
    s.add_argument("--alpha", type=float, default=0.05)
    s.set_defaults(func=cmd_sample)

    m = sub.add_parser("mc", help="Monte Carlo corank estimation")
    m.add_argument("spec", help="path to a ModelSpec JSON file")
    m.add_argument("--trials", type=int, required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--ref", choices=DIST_KINDS, default=None,
                   help="limiting law to compare against")
    m.add_argument("--threshold", type=float, default=None,
                   help="TV pass threshold for the comparison")
    m.add_argument("--csv")
    m.set_defaults(func=cmd_mc)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("chain", help="exact corank-chain computations")
    c.add_argument("kind", choices=chain_mod.CHAIN_KINDS)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--x0", type=int, default=0)
    c.add_argument("--steps", type=int, required=True)
    c.add_argument("--n", type=int, help="ambient dimension (iid-column)")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--hit-zero", action="store_true")
    g.add_argument("--path", action="store_true")
    g.add_argument("--planted", action="store_true")
    c.add_argument("--csv")
    c.set_defaults(func=cmd_chain)

    st = sub.add_parser("structure", help="structure measure of a vector")
    st.add_argument("spec", help="path to a ModelSpec JSON file")
    st.add_argument("--vector", required=True, help="comma-separated coordinates")
    st.add_argument("--K", type=float, default=None, help="threshold-set parameter")
    st.add_argument("--M", type=int, default=None,
                    help="required unstructured coordinates per t")
    st.set_defaults(func=cmd_structure)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FqRankError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
