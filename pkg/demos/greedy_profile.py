"""
Greedy breaks and their profile
===============================

Complete greedy break at order 6, its first half, and the prefix of
consecutive transpositions, scored by redundancy ratio and %ncc.
"""

import sys

from patbreak.greedy import ct_prefix, half, symbreak_greedy, top_four
from patbreak.metrics import BreakProfile, percent_ncc, profile

n = int(sys.argv[1]) if len(sys.argv) > 1 else 6

psi = symbreak_greedy(n)
print(f"order {n}: greedy selected {len(psi)} patterns in {psi.entries[-1].round} rounds")

print("\nthe four top patterns:")
for p in top_four(n):
    print("  ", p)
print(f"together they cover {percent_ncc(top_four(n), n):.2f}% of the non-canonical graphs")

print("\n" + "break," + BreakProfile.csv_header())
for name, part in (("complete", psi), ("half", half(psi)), ("ct-prefix", ct_prefix(psi))):
    print(name + "," + profile(part, n).csv_row())
