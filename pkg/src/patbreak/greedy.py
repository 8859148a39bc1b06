"""Greedy set cover of the non-canonical graphs by dominating patterns.

Rankings are exact counts over the whole graph space.  Since a pattern's
ranking can only drop as the break grows, candidates sit in a heap keyed by
a stale upper bound and are re-ranked only when they reach the top (lazy
greedy); the selected sequence is the same as re-ranking everything each
step.  Equal rankings go to the lexicographically least pattern.

Consecutive selections that are pairwise orthogonal form one round: their
covers are disjoint, so admitting them together changes no ranking.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .enumeration import dom_patterns
from .graphs import OrderError, PermClass, Permutation, num_edges
from .patterns import GraphPattern, PatternEntry, PatternSet, derive_pattern, orthogonal
from .sweep import SWEEP_MAX_ORDER, check_sweep_order, instance_codes


@dataclass(frozen=True)
class RankedPattern:
    pattern: GraphPattern
    delta: int
    round: int


def _fast_orthogonal(p: GraphPattern, q: GraphPattern) -> bool:
    zp, op, _ = p.masks
    zq, oq, _ = q.masks
    if zp & oq or op & zq:
        return True
    return orthogonal(p, q)


def ranking(p: GraphPattern, psi, n: int) -> int:
    """Graphs covered by ``p`` and by no member of ``psi`` (exhaustive)."""
    check_sweep_order(n)
    covered = np.zeros(1 << num_edges(n), dtype=bool)
    for q in psi:
        covered[instance_codes(q)] = True
    return int(np.count_nonzero(~covered[instance_codes(p)]))


def symbreak_greedy(n: int, candidates: PatternSet | None = None, big: bool = False) -> PatternSet:
    """Complete break selected greedily; entries carry ``delta`` and ``round``."""
    if n < 2:
        return PatternSet(n)
    check_sweep_order(n, big)
    pool = dom_patterns(n) if candidates is None else candidates
    entries = list(pool.entries)
    covered = np.zeros(1 << num_edges(n), dtype=bool)
    heap = [(-(1 << e.pattern.num_vars), e.pattern.sort_key(), k) for k, e in enumerate(entries)]
    heapq.heapify(heap)

    out = PatternSet(n)
    current_round: list[GraphPattern] = []
    rnd = 0
    while heap:
        _, key, k = heapq.heappop(heap)
        p = entries[k].pattern
        codes = instance_codes(p)
        r = int(np.count_nonzero(~covered[codes]))
        if r == 0:
            continue
        if heap and (-r, key) > heap[0][:2]:
            heapq.heappush(heap, (-r, key, k))
            continue
        if not current_round or not all(_fast_orthogonal(p, q) for q in current_round):
            rnd += 1
            current_round = []
        current_round.append(p)
        covered[codes] = True
        out.add(PatternEntry(p, delta=r, round=rnd, source=entries[k].source))
    return out


def half(psi: PatternSet) -> PatternSet:
    """The first (highest ranking) half, rounded down."""
    return psi[: len(psi) // 2]


def ct_prefix(psi: PatternSet) -> PatternSet:
    """Longest prefix of patterns derived from consecutive transpositions."""
    from .metrics import generating_class

    k = 0
    for e in psi.entries:
        if generating_class(e) is not PermClass.CT:
            break
        k += 1
    return psi[:k]


def top_four(n: int) -> list[GraphPattern]:
    """``pat_1((2 3))``, ``pat_2((1 2))``, ``pat_2((3 4))``, ``pat_4((4 5))``."""
    if n < 5:
        raise OrderError("the four top patterns are stated for order >= 5")
    return [
        derive_pattern(Permutation.swap(n, (2, 3)), 1),
        derive_pattern(Permutation.swap(n, (1, 2)), 2),
        derive_pattern(Permutation.swap(n, (3, 4)), 2),
        derive_pattern(Permutation.swap(n, (4, 5)), 4),
    ]


__all__ = ["RankedPattern", "SWEEP_MAX_ORDER", "ct_prefix", "half", "ranking", "symbreak_greedy", "top_four"]
