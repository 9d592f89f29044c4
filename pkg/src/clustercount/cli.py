"""Command-line frontend.

All results go to stdout as a single JSON object (or array for `check`);
diagnostics go to stderr.  Counts are serialized as decimal strings so
arbitrary-precision values survive any JSON consumer.

Exit codes: 0 success, 1 mathematical disagreement or failed check,
2 usage error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .coeffs import CoeffMap, normalize, read_coeff_file
from .counting import VarietyInstance, brute_count, default_budget
from .errors import BudgetExceeded, ClusterCountError, HeldOutMismatch
from .forests import (dynkin, dynkin_tiling, leafy_tiling, normal_form_slots,
                      read_tree_file)
from .formulas import formula_count
from .gf import field_from_order
from .qpoly import FamilyPolicy, fit_and_verify
from .recursion import recursive_count
from .singular import singular_points
from .suites import run_suite

USAGE_ERROR, MATH_ERROR, BUDGET_ERROR = 2, 1, 3


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _parse_alpha_items(spec: str) -> list:
    """Comma-separated items; each an integer reduced into the field, or a
    colon-separated coefficient vector for extension fields."""
    items = []
    for part in spec.split(","):
        part = part.strip()
        if ":" in part:
            items.append(tuple(int(c) for c in part.split(":")))
        else:
            items.append(int(part))
    return items


def _build_instance(args, field) -> tuple[VarietyInstance, str | None, int | None]:
    """Returns (instance, dynkin type or None, rank or None)."""
    if args.tree_file and args.type:
        raise UsageError("give either --type/--rank or --tree-file, not both")
    if args.tree_file:
        forest = read_tree_file(args.tree_file)
        if args.coeff_file:
            cm = read_coeff_file(args.coeff_file, field, forest)
        elif args.alpha:
            items = _parse_alpha_items(args.alpha)
            if len(items) != forest.n_vertices:
                raise UsageError(
                    f"--alpha needs {forest.n_vertices} values for this tree")
            cm = CoeffMap.make(field,
                               dict(zip(sorted(forest.vertices), items)))
        else:
            cm = CoeffMap.ones(field, forest)
        return VarietyInstance(forest, cm, field), None, None
    if not args.type:
        raise UsageError("give a variety: --type/--rank or --tree-file")
    if args.rank is None:
        raise UsageError("--type requires --rank")
    t, rank = args.type.upper(), args.rank
    forest = dynkin(t, rank)
    slots = normal_form_slots(t, rank)
    if args.coeff_file:
        cm = read_coeff_file(args.coeff_file, field, forest)
    elif args.alpha:
        items = _parse_alpha_items(args.alpha)
        if len(items) == forest.n_vertices:
            cm = CoeffMap.make(field,
                               dict(zip(sorted(forest.vertices), items)))
        elif len(items) == len(slots):
            values: dict[int, object] = {v: 1 for v in forest.vertices}
            for slot, val in zip(slots, items):
                values[slot] = val
            cm = CoeffMap.make(field, values)
        else:
            raise UsageError(
                f"--alpha needs {forest.n_vertices} values (full map) or "
                f"{len(slots)} (normal-form parameters) for {t}_{rank}")
    else:
        cm = CoeffMap.ones(field, forest)
    return VarietyInstance(forest, cm, field), t, rank


def _normalized_params(instance, t, rank):
    """Normalize a Dynkin instance with its canonical tiling; returns the
    normal form and the residual coefficient map."""
    tiling = dynkin_tiling(t, rank)
    return normalize(instance.forest, tiling, instance.coeffs)


def _method_report(report) -> dict:
    out = {"count": str(report.count), "elapsed_ms": round(report.elapsed_ms, 2)}
    if report.branch:
        out["branch"] = report.branch
    if report.engine:
        out["engine"] = report.engine
    return out


def cmd_count(args) -> int:
    field = field_from_order(args.q)
    instance, t, rank = _build_instance(args, field)
    methods = (["brute", "recursion", "formula"] if args.method == "all"
               else [args.method])
    if "formula" in methods and t is None:
        if args.method == "all":
            methods.remove("formula")
        else:
            raise UsageError("--method formula needs a Dynkin variety")
    results = {}
    for m in methods:
        if m == "brute":
            results[m] = brute_count(instance, budget=args.budget,
                                     jobs=args.jobs, engine=args.engine)
        elif m == "recursion":
            results[m] = recursive_count(instance)
        else:
            norm = _normalized_params(instance, t, rank)
            results[m] = formula_count(t, rank, norm.coeffs, field)
    counts = {m: r.count for m, r in results.items()}
    agree = len(set(counts.values())) == 1
    out = {
        "variety": instance.descriptor(),
        "q": field.q,
        "method": args.method,
        "count": str(next(iter(counts.values()))),
        "branch": next((r.branch for r in results.values() if r.branch), None),
        "elapsed_ms": round(sum(r.elapsed_ms for r in results.values()), 2),
    }
    if len(results) > 1:
        out["methods"] = {m: _method_report(r) for m, r in results.items()}
        out["agree"] = agree
    _emit(out)
    return 0 if agree else MATH_ERROR


def cmd_normalize(args) -> int:
    field = field_from_order(args.q)
    instance, t, rank = _build_instance(args, field)
    if t is not None:
        tiling = dynkin_tiling(t, rank)
    else:
        tiling = leafy_tiling(instance.forest)
    norm = normalize(instance.forest, tiling, instance.coeffs)
    _emit({
        "variety": instance.descriptor(),
        "q": field.q,
        "alpha": instance.coeffs.as_str(),
        "normalized": norm.coeffs.as_str(),
        "covered": sorted(tiling.covered),
        "dominoes": [list(d) for d in tiling.dominoes],
        "trace": [list(step) for step in norm.trace],
    })
    return 0


def cmd_singular(args) -> int:
    field = field_from_order(args.q)
    instance, _, _ = _build_instance(args, field)
    pts = singular_points(instance, budget=args.budget)
    _emit({
        "variety": instance.descriptor(),
        "q": field.q,
        "count": len(pts),
        "singular_points": [
            {"x": {str(v): str(p.x[v]) for v in sorted(p.x)},
             "xp": {str(v): str(p.xp[v]) for v in sorted(p.xp)}}
            for p in pts
        ],
    })
    return 0


def cmd_interpolate(args) -> int:
    policy = FamilyPolicy(args.type.upper(), args.rank, args.branch)
    try:
        rep = fit_and_verify(policy, degree=args.degree, extra=args.extra)
    except HeldOutMismatch as exc:
        _emit({"family": policy.name, "ok": False, "held_out_q": exc.q,
               "predicted": str(exc.expected), "count": str(exc.actual)})
        return MATH_ERROR
    _emit({
        "family": policy.name,
        "degree": rep.polynomial.degree,
        "polynomial": rep.polynomial.text(descending=not args.ascending),
        "coefficients": rep.polynomial.coefficient_strings(),
        "samples": [list(s) for s in rep.samples],
        "held_out": [list(h) for h in rep.held_out],
        "residuals": list(rep.residuals),
        "ok": rep.ok,
    })
    return 0 if rep.ok else MATH_ERROR


def cmd_check(args) -> int:
    results = run_suite(args.suite, engine=args.engine)
    _emit([r.to_json() for r in results])
    return 0 if all(r.ok for r in results) else MATH_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clustercount",
        description="Exact F_q point counts for exchange-equation varieties "
                    "on trees and forests.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_variety_args(p):
        p.add_argument("--type", choices=list("ADEade"),
                       help="Dynkin type (with --rank)")
        p.add_argument("--rank", type=int, help="Dynkin rank")
        p.add_argument("--tree-file", help="forest file: 'u v' per edge, "
                                           "'v' per isolated vertex")
        p.add_argument("--alpha",
                       help="coefficients: comma-separated integers (mod p), "
                            "vectors as colon-separated digits; either one "
                            "value per vertex or just the normal-form "
                            "parameters; default all ones")
        p.add_argument("--coeff-file", help="coefficient file: 'v value' "
                                            "per line, default 1")
        p.add_argument("--q", type=int, required=True,
                       help="field order (prime power)")
        p.add_argument("--budget", type=int, default=None,
                       help="enumeration budget in elementary steps "
                            f"(default {default_budget()}, or "
                            "CLUSTERCOUNT_BUDGET)")

    p_count = sub.add_parser("count", help="count points")
    add_variety_args(p_count)
    p_count.add_argument("--method", default="all",
                         choices=["brute", "recursion", "formula", "all"])
    p_count.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                         help="parallel workers for enumeration")
    p_count.add_argument("--engine", default="auto",
                         choices=["auto", "ext", "numpy", "scalar"],
                         help="enumeration kernel")
    p_count.set_defaults(fn=cmd_count)

    p_norm = sub.add_parser("normalize",
                            help="flip coefficients to tiling normal form")
    add_variety_args(p_norm)
    p_norm.set_defaults(fn=cmd_normalize)

    p_sing = sub.add_parser("singular", help="list singular points")
    add_variety_args(p_sing)
    p_sing.set_defaults(fn=cmd_singular)

    p_interp = sub.add_parser("interpolate",
                              help="fit the count polynomial of a family")
    p_interp.add_argument("--type", required=True, choices=list("ADEade"))
    p_interp.add_argument("--rank", type=int, required=True)
    p_interp.add_argument("--branch", default="generic",
                          choices=["generic", "special", "equal-special",
                                   "one-special", "double-special"])
    p_interp.add_argument("--degree", type=int, default=None,
                          help="degree bound (default: rank)")
    p_interp.add_argument("--extra", type=int, default=2,
                          help="held-out verification primes")
    p_interp.add_argument("--ascending", action="store_true",
                          help="print polynomial lowest degree first")
    p_interp.set_defaults(fn=cmd_interpolate)

    p_check = sub.add_parser("check", help="run verification batteries")
    p_check.add_argument("--suite", default="paper",
                         help="paper (everything) or one of: typeA, typeD, "
                              "typeE, reduction, yz, fibration, smoothness, "
                              "cohomology, interpolation, primepower")
    p_check.add_argument("--engine", default="auto",
                         choices=["auto", "ext", "numpy", "scalar"])
    p_check.set_defaults(fn=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET_ERROR
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ClusterCountError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
