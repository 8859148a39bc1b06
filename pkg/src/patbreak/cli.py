"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (order or budget refused,
incomplete break, ...), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path

from .cegar import CegarError, IncompleteBreakError, layered_cegar
from .enumeration import BudgetError, all_patterns, census, dominators
from .graphs import CLASS_CHAIN, OrderError, PermClass
from .greedy import ct_prefix, half, symbreak_greedy
from .metrics import break_cnf, profile, redundancy_ratio
from .patterns import PatternError, PatternSet
from .ramsey import BudgetError as RamseyBudgetError
from .ramsey import RamseyInstance, count_solutions, ramsey_clauses, tailored_break
from .sat import ExternalToolError

DOMAIN_ERRORS = (
    OrderError,
    BudgetError,
    RamseyBudgetError,
    IncompleteBreakError,
    PatternError,
    ExternalToolError,
    CegarError,
    OverflowError,
    FileNotFoundError,
)

RATIO_MAX_ORDER = 7


def _classes(text: str) -> list[PermClass]:
    try:
        return [PermClass.parse(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _perm_class(text: str) -> PermClass:
    try:
        return PermClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _problem(spec: str | None, n: int):
    if spec is None:
        return None
    if not spec.startswith("ramsey:"):
        raise argparse.ArgumentTypeError(f"unknown problem {spec!r} (expected ramsey:S,T)")
    return ramsey_clauses(RamseyInstance.parse(spec, n))


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_patterns(args) -> int:
    n, c = args.order, args.perm_class
    if args.census:
        print(census(n, c, args.budget).csv_row())
        return 0
    pats = all_patterns(n, c, args.budget)
    if args.dominating:
        pats = dominators(pats)
    _emit(pats.to_text({"class": str(c)}), args.out)
    return 0


def cmd_greedy(args) -> int:
    psi = symbreak_greedy(args.order, big=args.big)
    kind = "complete"
    if args.half:
        psi, kind = half(psi), "half"
    elif args.ct_prefix:
        psi, kind = ct_prefix(psi), "ct-prefix"
    _emit(psi.to_text({"break": f"greedy {kind}"}), args.out)
    return 0


def cmd_cegar(args) -> int:
    n = args.order
    layers = [PermClass.ALL] if args.no_layers else args.layers
    problem = _problem(args.problem, n)
    run = layered_cegar(n, layers, problem, reduce_break=args.reduce)
    final = run.reduced if run.reduced is not None else run.psi
    header = {"break": "cegar layered" if not args.no_layers else "cegar", "iterations": str(run.iterations)}
    if args.problem:
        header["problem"] = args.problem
    _emit(final.to_text(header), args.out)
    if args.stats:
        with open(args.stats, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["layer", "iterations", "patterns", "ratio", "seconds"])
            for s in run.layers:
                ratio = ""
                if n <= RATIO_MAX_ORDER:
                    ratio = f"{float(redundancy_ratio(run.snapshot(s.layer), n, problem)):.4f}"
                w.writerow([str(s.layer), s.iterations, s.patterns, ratio, f"{s.seconds:.3f}"])
            if run.reduced is not None:
                w.writerow(["reduced", "", len(run.reduced), "", ""])
    return 0


def cmd_profile(args) -> int:
    n = args.order
    psi = PatternSet.load(args.break_file, n)
    problem = _problem(args.problem, n)
    if args.emit_cnf:
        break_cnf(psi, n, problem).export_dimacs(args.emit_cnf)
    prof = profile(psi, n, problem, big=args.big)
    if args.json:
        print(json.dumps(prof.as_dict(), sort_keys=True))
    else:
        print(prof.csv_header())
        print(prof.csv_row())
    return 0


def cmd_ramsey(args) -> int:
    inst = RamseyInstance(args.s, args.t, args.order)
    rows = []
    if args.break_file:
        rows.append((Path(args.break_file).name, PatternSet.load(args.break_file, inst.n)))
    elif args.layers:
        run = tailored_break(inst, args.layers)
        rows += [(str(s.layer), run.snapshot(s.layer)) for s in run.layers]
    else:
        rows.append(("none", PatternSet(inst.n)))
    if args.emit_cnf:
        break_cnf(rows[-1][1], inst.n, ramsey_clauses(inst)).export_dimacs(args.emit_cnf)
    if not (args.count or args.csv):
        return 0
    results = []
    for name, psi in rows:
        t0 = time.perf_counter()
        res = count_solutions(inst, psi, limit=args.limit)
        if not res.complete:
            print(f"enumeration stopped at the limit of {args.limit} models", file=sys.stderr)
            return 1
        results.append((name, res.count, time.perf_counter() - t0))
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["s", "t", "n", "break", "count", "seconds"])
        for name, count, sec in results:
            w.writerow([inst.s, inst.t, inst.n, name, count, f"{sec:.3f}"])
    else:
        print(results[-1][1])
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="patbreak", description="Graph-pattern symmetry breaks for graph search.")
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1, help="accepted for compatibility; sweeps run in-process")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("patterns", help="enumerate class-restricted patterns")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--class", dest="perm_class", type=_perm_class, default=PermClass.ALL)
    p.add_argument("--census", action="store_true", help="print n,class,total,dominating")
    p.add_argument("--dominating", action="store_true")
    p.add_argument("--budget", type=int, default=10**7, help="max number of derivations")
    p.add_argument("--out")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("greedy", help="greedy complete or truncated break")
    p.add_argument("--order", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--half", action="store_true")
    g.add_argument("--ct-prefix", action="store_true")
    p.add_argument("--big", action="store_true", help="allow the order 8 sweep")
    p.add_argument("--out")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("cegar", help="layered CEGAR synthesis")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--layers", type=_classes, default=list(CLASS_CHAIN))
    p.add_argument("--no-layers", action="store_true", help="single layer 'all'")
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--problem", help="ramsey:S,T")
    p.add_argument("--stats", help="per-layer CSV")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cegar)

    p = sub.add_parser("profile", help="size, class histogram, rho and %%ncc of a break")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--break", dest="break_file", required=True)
    p.add_argument("--problem", help="ramsey:S,T")
    p.add_argument("--json", action="store_true")
    p.add_argument("--big", action="store_true", help="allow the order 8 sweep")
    p.add_argument("--emit-cnf", help="also write the counting CNF")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("ramsey", help="count Ramsey graphs under a break")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--break", dest="break_file")
    src.add_argument("--layers", type=_classes)
    p.add_argument("--count", action="store_true")
    p.add_argument("--csv", action="store_true", help="one row per break (per layer with --layers)")
    p.add_argument("--limit", type=int, default=10**6, help="model enumeration budget")
    p.add_argument("--emit-cnf")
    p.set_defaults(func=cmd_ramsey)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        ap.error(str(exc))
    except DOMAIN_ERRORS as exc:
        print(f"patbreak: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"patbreak: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
