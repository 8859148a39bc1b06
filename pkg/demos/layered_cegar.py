"""
Layered CEGAR
=============

Saturate the permutation classes one after the other and watch the
redundancy ratio fall to 1.  The same break without layers needs many
more solver iterations.
"""

import sys

from patbreak.cegar import layered_cegar, verify_complete
from patbreak.graphs import PermClass
from patbreak.metrics import redundancy_ratio

n = int(sys.argv[1]) if len(sys.argv) > 1 else 6

run = layered_cegar(n, reduce_break=True)
print(f"order {n}")
print("layer   iterations  patterns  ratio")
for s in run.layers:
    rho = redundancy_ratio(run.snapshot(s.layer), n)
    print(f"{str(s.layer):6}  {s.iterations:10d}  {s.patterns:8d}  {float(rho):.3f}")
print("complete:", verify_complete(run.psi, n))
print(f"reduced: {len(run.psi)} -> {len(run.reduced)} patterns")

flat = layered_cegar(n, [PermClass.ALL])
print(f"\niterations with layers {run.iterations}, without {flat.iterations}")
