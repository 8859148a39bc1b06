"""
Ramsey graphs under tailored breaks
===================================

Count the graphs with no s-clique and no independent t-set that
survive each layer of a break synthesised for that very problem.
"""

import argparse

from patbreak.ramsey import RamseyInstance, count_solutions, ramsey_clauses, sweep_count, tailored_break
from patbreak.metrics import iso_class_count

ap = argparse.ArgumentParser()
ap.add_argument("--s", type=int, default=4)
ap.add_argument("--t", type=int, default=4)
ap.add_argument("--orders", type=int, nargs="+", default=[4, 5, 6, 7])
args = ap.parse_args()

for n in args.orders:
    inst = RamseyInstance(args.s, args.t, n)
    # the unbroken count is cheaper by sweep than by enumerating models
    total = sweep_count(inst)
    run = tailored_break(inst)
    counts = [count_solutions(inst, run.snapshot(s.layer)).count for s in run.layers]
    iso = iso_class_count(n, ramsey_clauses(inst))
    print(f"{inst}: {total} labelled graphs, {iso} up to isomorphism")
    print("   per layer:", " / ".join(f"{s.layer} {c}" for s, c in zip(run.layers, counts)))
