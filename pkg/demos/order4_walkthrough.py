"""
Order-4 walkthrough
===================

Canonical graphs, the pattern of a relabelling, and the greedy break,
all on the 64 graphs with four vertices.
"""

from patbreak import GraphBits, Permutation, PermClass
from patbreak.enumeration import census
from patbreak.graphs import apply_perm, is_canonical
from patbreak.greedy import symbreak_greedy
from patbreak.patterns import cover_size, derive_pattern, instances

# edge vectors list (1,2), (1,3), (2,3), (1,4), (2,4), (3,4)
graphs = [GraphBits(4, code) for code in range(64)]
canon = [g for g in graphs if is_canonical(g)]
print(f"{len(canon)} canonical graphs out of {len(graphs)}:")
for g in canon:
    print("  ", g)

# swapping vertices 2 and 3 reduces every graph that starts with [1,0,...]
pi = Permutation((1, 3, 2, 4))
p = derive_pattern(pi, 1)
print(f"\npat_1({list(pi.image)}) = {p}, covering {cover_size(p)} graphs")
for g in list(instances(p))[:4]:
    print(f"   {g} -> {apply_perm(pi, g)}")

print(f"\n{len(graphs) - len(canon)} graphs are not canonical; every one is an instance of some pattern")
for c in PermClass:
    print("  ", census(4, c).csv_row())

# the greedy break: three rounds of mutually orthogonal patterns
psi = symbreak_greedy(4)
print("\ngreedy break (round, delta, pattern):")
for e in psi.entries:
    print(f"   {e.round}  {e.delta:2d}  {e.pattern}")
print("sum of deltas:", sum(e.delta for e in psi.entries))
