"""Quality measures of symmetry breaks: redundancy ratio, %ncc, class profile.

Counting is exhaustive over the graph space (order <= 7, or 8 with
``big=True``).  Problems are CNF formulas over the edge variables 1..m.
The same quantities can be obtained by model counting the CNF from
:func:`break_cnf`, with the bundled solver or an external counter.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .enumeration import all_patterns
from .graphs import LAYER_CLASSES, PermClass, num_edges, smallest_class
from .patterns import GraphPattern, PatternEntry, PatternSet, XorRegistry, to_clause
from .sat import CnfFormula, external_count
from .sweep import all_codes, canonical_codes, covered_mask

HISTOGRAM_MAX_ORDER = 8


def _clause_masks(clause, m: int) -> tuple[int, int]:
    pos = neg = 0
    for x in clause:
        v = abs(x)
        if v > m:
            raise ValueError(f"problem variable {v} is not an edge variable; exhaustive evaluation impossible")
        bit = 1 << (m - v)
        if x > 0:
            pos |= bit
        else:
            neg |= bit
    return pos, neg


def satisfying(codes: np.ndarray, problem: CnfFormula | None, n: int) -> np.ndarray:
    """Boolean mask over ``codes``: the graph satisfies every problem clause."""
    ok = np.ones(codes.shape, dtype=bool)
    if problem is None:
        return ok
    m = num_edges(n)
    dt = codes.dtype.type
    for c in problem.clauses:
        pos, neg = _clause_masks(c, m)
        hit = np.zeros(codes.shape, dtype=bool)
        if pos:
            hit |= (codes & dt(pos)) != 0
        if neg:
            hit |= (codes & dt(neg)) != dt(neg)
        ok &= hit
    return ok


def problem_codes(n: int, problem: CnfFormula | None = None, big: bool = False) -> np.ndarray:
    """Codes of all graphs of order ``n`` that satisfy ``problem``."""
    codes = all_codes(n, big)
    return codes if problem is None else codes[satisfying(codes, problem, n)]


def _canonical_in(n: int, codes: np.ndarray, big: bool) -> np.ndarray:
    canon = canonical_codes(n, big)
    return np.isin(codes, canon, assume_unique=True)


def iso_class_count(n: int, problem: CnfFormula | None = None, big: bool = False) -> int:
    codes = problem_codes(n, problem, big)
    return int(np.count_nonzero(_canonical_in(n, codes, big)))


def survivor_count(psi: Iterable[GraphPattern], n: int, problem: CnfFormula | None = None, big: bool = False) -> int:
    """Graphs of the problem covered by no pattern of the break."""
    codes = problem_codes(n, problem, big)
    mask = covered_mask(n, psi, big)
    return int(np.count_nonzero(~mask[codes]))


def redundancy_ratio(psi: Iterable[GraphPattern], n: int, problem: CnfFormula | None = None, big: bool = False) -> Fraction:
    iso = iso_class_count(n, problem, big)
    if iso == 0:
        raise ZeroDivisionError("the problem has no solutions, the ratio is undefined")
    return Fraction(survivor_count(psi, n, problem, big), iso)


def percent_ncc(psi: Iterable[GraphPattern], n: int, problem: CnfFormula | None = None, big: bool = False) -> float:
    """Percentage of the non-canonical graphs (of the problem) that the break covers."""
    codes = problem_codes(n, problem, big)
    noncanon = codes[~_canonical_in(n, codes, big)]
    if noncanon.size == 0:
        return 100.0
    mask = covered_mask(n, psi, big)
    return 100.0 * np.count_nonzero(mask[noncanon]) / noncanon.size


# --------------------------------------------------------------------------
# class histogram


@lru_cache(maxsize=None)
def _involution_sources(n: int) -> dict[tuple[int, ...], PermClass]:
    return {e.pattern.cells: e.source for e in all_patterns(n, PermClass.I, budget=10**9).entries}


def generating_class(item: GraphPattern | PatternEntry) -> PermClass | None:
    """The smallest class containing a permutation that derives the pattern.

    Up to order 8 this is exact: the involution patterns are enumerated and
    anything else is ``all``.  Beyond that the recorded provenance decides.
    """
    p = item.pattern if isinstance(item, PatternEntry) else item
    if p.n <= HISTOGRAM_MAX_ORDER:
        return _involution_sources(p.n).get(p.cells, PermClass.ALL)
    if p.provenance is not None:
        return smallest_class(p.provenance[0])
    if isinstance(item, PatternEntry):
        return item.source
    return None


def class_histogram(psi: PatternSet | Iterable[GraphPattern]) -> dict[str, int]:
    """Cumulative: patterns whose smallest generating class lies within each layer class."""
    items = psi.entries if isinstance(psi, PatternSet) else list(psi)
    classes = [generating_class(x) for x in items]
    return {str(c): sum(1 for g in classes if g is not None and g <= c) for c in LAYER_CLASSES}


@dataclass
class BreakProfile:
    size: int
    histogram: dict[str, int]
    rho: Fraction
    pct_ncc: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["rho"] = float(self.rho)
        d["rho_exact"] = f"{self.rho.numerator}/{self.rho.denominator}"
        return d

    def csv_row(self) -> str:
        cols = [self.size, *self.histogram.values(), f"{float(self.rho):.2f}", f"{self.pct_ncc:.2f}"]
        return ",".join(map(str, cols))

    @staticmethod
    def csv_header() -> str:
        return ",".join(["size", *map(str, LAYER_CLASSES), "rho", "pct_ncc"])


def profile(psi: PatternSet, n: int, problem: CnfFormula | None = None, big: bool = False) -> BreakProfile:
    return BreakProfile(
        size=len(psi),
        histogram=class_histogram(psi),
        rho=redundancy_ratio(psi, n, problem, big),
        pct_ncc=percent_ncc(psi, n, problem, big),
    )


# --------------------------------------------------------------------------
# counting through CNF


def break_cnf(psi: Iterable[GraphPattern], n: int, problem: CnfFormula | None = None) -> CnfFormula:
    """Problem clauses plus one not-covered clause per pattern, projected on the edges."""
    m = num_edges(n)
    f = CnfFormula(var_count=m)
    if problem is not None:
        remap: dict[int, int] = {}
        for c in problem.clauses:
            lits = []
            for x in c:
                v = abs(x)
                if v > m:
                    v = remap.setdefault(v, f.new_var())
                lits.append(v if x > 0 else -v)
            f.add_clause(lits)
    reg = XorRegistry(f)
    edges = list(range(1, m + 1))
    for p in psi:
        f.add_clause(to_clause(p, edges, reg))
    f.comments.append(f"order {n}, edge variables 1..{m} in column-major upper-triangle order")
    f.comments.append("projected-vars " + " ".join(map(str, edges)) + " 0")
    return f


def count_models(f: CnfFormula, projection: list[int] | None = None, limit: int | None = None, external: str | None = None) -> int:
    """Projected model count, by enumeration or through an external counter."""
    if external is not None:
        return external_count(f, external)
    from .sat.cnf import projected_vars

    proj = projection or projected_vars(f) or list(range(1, f.var_count + 1))
    en = f.to_solver().enumerate_models(proj, limit=limit).run()
    if not en.complete:
        raise OverflowError(f"more than {limit} models")
    return en.count


__all__ = [
    "BreakProfile",
    "break_cnf",
    "class_histogram",
    "count_models",
    "generating_class",
    "iso_class_count",
    "percent_ncc",
    "problem_codes",
    "profile",
    "redundancy_ratio",
    "satisfying",
    "survivor_count",
]
