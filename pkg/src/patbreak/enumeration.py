"""Enumeration of class-restricted pattern sets and their dominating subsets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import PermClass, class_members, class_size, num_edges, smallest_class
from .patterns import BOT, PatternSet, derive_patterns

DEFAULT_BUDGET = 40_320 * 28 + 1


class BudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class PatternCensus:
    order: int
    perm_class: PermClass
    total: int
    dominating: int

    def csv_row(self) -> str:
        return f"{self.order},{self.perm_class},{self.total},{self.dominating}"


def all_patterns(n: int, c: PermClass, budget: int = DEFAULT_BUDGET) -> PatternSet:
    """Distinct non-BOT patterns ``pat_i(pi)`` over the class members.

    Members come smallest class first, so the provenance kept for a pattern
    (its first generator) lies in the pattern's smallest generating class.
    """
    work = class_size(n, c) * num_edges(n)
    if work > budget:
        raise BudgetError(f"{work} derivations for order {n}, class {c} exceed the budget {budget}")
    out = PatternSet(n)
    for pi in class_members(n, c):
        source = smallest_class(pi)
        for _, p in derive_patterns(pi):
            if p is not BOT:
                out.add(p, source=source)
    return out


def _cell_matrix(s: PatternSet) -> np.ndarray:
    return np.array([p.cells for p in s], dtype=np.int16).reshape(len(s), num_edges(s.n))


def dominators(s: PatternSet) -> PatternSet:
    """Members not strictly subsumed by another member, in the original order.

    A strict subsumer has more variables than what it subsumes, and its
    constants are a subset of the subsumed pattern's constants.  Candidates
    are filtered on packed constant masks before the cell-wise check.
    """
    if len(s) == 0:
        return PatternSet(s.n)
    cells = _cell_matrix(s)
    nvars = -cells.min(axis=1, initial=0)
    weights = np.array([1 << k for k in range(cells.shape[1])], dtype=np.uint64)
    zmask = ((cells == 0).astype(np.uint64) * weights).sum(axis=1)
    omask = ((cells == 1).astype(np.uint64) * weights).sum(axis=1)

    order = np.argsort(nvars, kind="stable")
    cells, nvars, zmask, omask = cells[order], nvars[order], zmask[order], omask[order]
    dominated = np.zeros(len(cells), dtype=bool)
    # patterns [0, start[k]) have fewer variables than pattern k
    start = np.searchsorted(nvars, nvars, side="left")

    for k in range(len(cells)):
        lim = start[k]
        if lim == 0:
            continue
        z1, o1 = zmask[k], omask[k]
        cand = np.flatnonzero(((zmask[:lim] & z1) == z1) & ((omask[:lim] & o1) == o1) & ~dominated[:lim])
        if cand.size == 0:
            continue
        sub = cells[cand]
        row = cells[k]
        ok = np.ones(cand.size, dtype=bool)
        for v in range(1, nvars[k] + 1):
            qs = np.flatnonzero(row == -v)
            if qs.size > 1:
                first = sub[:, qs[0]]
                for q in qs[1:]:
                    ok &= sub[:, q] == first
                if not ok.any():
                    break
        dominated[cand[ok]] = True

    keep = np.zeros(len(cells), dtype=bool)
    keep[order[~dominated]] = True
    return PatternSet(s.n, [e for e, flag in zip(s.entries, keep) if flag])


def dom_patterns(n: int, c: PermClass = PermClass.ALL, budget: int = DEFAULT_BUDGET) -> PatternSet:
    return dominators(all_patterns(n, c, budget))


def census(n: int, c: PermClass, budget: int = DEFAULT_BUDGET) -> PatternCensus:
    pats = all_patterns(n, c, budget)
    return PatternCensus(n, c, len(pats), len(dominators(pats)))
