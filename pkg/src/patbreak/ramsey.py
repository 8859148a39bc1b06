"""Ramsey graph search R(s,t;n): no s-clique and no independent t-set."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .cegar import CegarRun, layered_cegar
from .graphs import CLASS_CHAIN, PermClass, edge_index, num_edges
from .metrics import break_cnf, problem_codes
from .patterns import GraphPattern
from .sat import CnfFormula
from .sweep import covered_mask, layer_minimal_counts

CLAUSE_BUDGET = 10**6
ENUMERATION_BUDGET = 10**6


class BudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class RamseyInstance:
    s: int
    t: int
    n: int

    def __post_init__(self):
        if self.s < 2 or self.t < 2:
            raise ValueError("clique and independent-set bounds must be at least 2")
        if self.n < 1:
            raise ValueError("order must be positive")

    @classmethod
    def parse(cls, text: str, n: int) -> "RamseyInstance":
        """``"4,4"`` or ``"ramsey:4,4"``."""
        body = text.split(":", 1)[1] if text.startswith("ramsey:") else text
        s, t = (int(x) for x in body.split(","))
        return cls(s, t, n)

    def __str__(self) -> str:
        return f"R({self.s},{self.t};{self.n})"


def ramsey_clauses(inst: RamseyInstance, budget: int = CLAUSE_BUDGET) -> CnfFormula:
    n = inst.n
    total = comb(n, inst.s) + comb(n, inst.t)
    if total > budget:
        raise BudgetError(f"{inst} needs {total} clauses, budget {budget}")
    f = CnfFormula(var_count=num_edges(n), comments=[f"ramsey s={inst.s} t={inst.t} n={n}"])
    for k, sign in ((inst.s, -1), (inst.t, 1)):
        for S in combinations(range(1, n + 1), k):
            f.add_clause([sign * edge_index(i, j, n) for i, j in combinations(S, 2)])
    return f


@dataclass
class SolutionCount:
    count: int
    complete: bool
    seconds: float


def count_solutions(
    inst: RamseyInstance,
    psi: Iterable[GraphPattern] = (),
    limit: int | None = ENUMERATION_BUDGET,
) -> SolutionCount:
    """Solutions covered by no pattern, by SAT enumeration over the edge variables."""
    t0 = time.perf_counter()
    f = break_cnf(psi, inst.n, ramsey_clauses(inst))
    en = f.to_solver().enumerate_models(list(range(1, num_edges(inst.n) + 1)), limit=limit).run()
    return SolutionCount(en.count, en.complete, time.perf_counter() - t0)


def sweep_count(inst: RamseyInstance, psi: Iterable[GraphPattern] = ()) -> int:
    """Same count by exhaustive sweep (order <= 7)."""
    codes = problem_codes(inst.n, ramsey_clauses(inst))
    mask = covered_mask(inst.n, psi)
    return int((~mask[codes]).sum())


def layer_counts(inst: RamseyInstance) -> dict[PermClass, int]:
    """Solutions G with G <= pi(G) for every pi in each cumulative class (exhaustive)."""
    return layer_minimal_counts(inst.n, problem_codes(inst.n, ramsey_clauses(inst)))


def tailored_break(
    inst: RamseyInstance,
    layers: Sequence[PermClass] = CLASS_CHAIN,
    reduce_break: bool = False,
) -> CegarRun:
    return layered_cegar(inst.n, layers, ramsey_clauses(inst), reduce_break)


__all__ = [
    "BudgetError",
    "RamseyInstance",
    "SolutionCount",
    "count_solutions",
    "layer_counts",
    "ramsey_clauses",
    "sweep_count",
    "tailored_break",
]
