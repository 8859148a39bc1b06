"""Counter-example guided synthesis of pattern-based symmetry breaks.

A counter-example is a graph G, not covered by the current break, together
with a permutation pi from the active class such that pi(G) < G.  Its
pattern ``pat_i(pi)``, i the first position where the two differ, covers G
and is added to the break.  A layer ends when the query is unsatisfiable.

Variables are allocated edges first (1..m), then the permutation matrix,
then everything auxiliary (image edges, lex chain, class guards, xors,
problem auxiliaries).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .graphs import (
    CLASS_CHAIN,
    GraphBits,
    Lex,
    PermClass,
    Permutation,
    apply_perm,
    edge_index,
    lex_strict_at,
    num_edges,
)
from .patterns import BOT, GraphPattern, PatternEntry, PatternSet, XorRegistry, covers, derive_pattern, to_clause
from .sat import CnfFormula, Solver


class CegarError(RuntimeError):
    """Internal inconsistency between a model and its decoded counter-example."""


class IncompleteBreakError(ValueError):
    pass


# --------------------------------------------------------------------------
# encodings


@dataclass
class PermEncoding:
    n: int
    matrix: list[list[int]]  # matrix[u][v] true iff pi(u) = v, 1-based, row/col 0 unused
    image: list[int] = field(default_factory=list)  # image[p-1]: edge p of pi(G)
    guards: dict[str, int] = field(default_factory=dict)

    def assumptions(self, c: PermClass) -> list[int]:
        """Guard literals that restrict the permutation to class ``c``."""
        g = self.guards
        if c is PermClass.ALL:
            return []
        base = [g["inv"]]
        extra = {
            PermClass.CT: ["t", "band"],
            PermClass.T: ["t"],
            PermClass.CI_T: ["ci_t"],
            PermClass.DI: ["di"],
            PermClass.I: [],
        }[c]
        return base + [g[k] for k in extra]

    def decode(self, value) -> Permutation:
        n = self.n
        image = []
        for u in range(1, n + 1):
            row = [v for v in range(1, n + 1) if value(self.matrix[u][v])]
            if len(row) != 1:
                raise CegarError(f"row {u} of the permutation matrix is not exactly-one")
            image.append(row[0])
        return Permutation(tuple(image))


def _swap_pairs(n: int):
    return list(combinations(range(1, n + 1), 2))


def encode_permutation(h, n: int, c: PermClass | None = None) -> PermEncoding:
    """Permutation matrix with guarded class constraints.

    Every class restriction hangs off a guard variable, so one clause
    database serves all layers.  With ``c`` given, the guards for ``c`` are
    also asserted as unit clauses.
    """
    P = [[0] * (n + 1) for _ in range(n + 1)]
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            P[u][v] = h.new_var()
    add = h.add_clause
    for u in range(1, n + 1):
        add([P[u][v] for v in range(1, n + 1)])
        add([P[v][u] for v in range(1, n + 1)])
        for v, w in combinations(range(1, n + 1), 2):
            add([-P[u][v], -P[u][w]])
            add([-P[v][u], -P[w][u]])
    add([-P[u][u] for u in range(1, n + 1)])

    g = {k: h.new_var() for k in ("inv", "t", "band", "di", "ci_t")}
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u != v:
                add([-g["inv"], -P[u][v], P[v][u]])
                if abs(u - v) > 1:
                    add([-g["band"], -P[u][v]])
    pairs = _swap_pairs(n)
    for (a, b), (x, y) in combinations(pairs, 2):
        if len({a, b, x, y}) < 4:
            continue
        add([-g["t"], -P[a][b], -P[x][y]])
        if a > x:
            (a, b), (x, y) = (x, y), (a, b)
        if x < b:  # crossing or nested
            add([-g["di"], -P[a][b], -P[x][y]])
    s = h.new_var()
    add([-g["ci_t"], -s, g["band"]])
    add([-g["ci_t"], s, g["t"]])

    enc = PermEncoding(n, P, guards=g)
    if c is not None:
        for lit in enc.assumptions(c):
            add([lit])
    return enc


def encode_image(h, enc: PermEncoding, edge_vars: Sequence[int]) -> list[int]:
    """Variables ``f`` with ``f[p-1]`` equal to edge ``p`` of pi(G).

    ``P[u][i] & P[v][j] -> (f_ij <-> e_uv)`` over ordered pairs u != v; since
    exactly one such (u, v) holds per target, this defines f without
    auxiliaries.
    """
    n = enc.n
    P = enc.matrix
    f = [h.new_var() for _ in range(num_edges(n))]
    add = h.add_clause
    for i, j in combinations(range(1, n + 1), 2):
        fij = f[edge_index(i, j, n) - 1]
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                if u == v:
                    continue
                e = edge_vars[edge_index(min(u, v), max(u, v), n) - 1]
                add([-P[u][i], -P[v][j], -e, fij])
                add([-P[u][i], -P[v][j], e, -fij])
    enc.image = f
    return f


def encode_lex_less(h, f: Sequence[int], e: Sequence[int]) -> list[int]:
    """Force ``f <_lex e`` with a chain of prefix-equality variables."""
    if len(f) != len(e):
        raise ValueError("lex comparison of vectors of different length")
    add = h.add_clause
    if not f:
        add([])
        return []
    chain = []
    prev = None
    for fk, ek in zip(f, e):
        a = h.new_var()
        guard = [] if prev is None else [-prev]
        add(guard + [-fk, ek])
        add(guard + [fk, ek, a])
        add(guard + [-fk, -ek, a])
        chain.append(a)
        prev = a
    add([-prev])
    return chain


def _copy_problem(h, problem: CnfFormula | None, m: int) -> None:
    if problem is None:
        return
    remap: dict[int, int] = {}

    def lit(x: int) -> int:
        v = abs(x)
        if v > m:
            if v not in remap:
                remap[v] = h.new_var()
            v = remap[v]
        return v if x > 0 else -v

    for c in problem.clauses:
        h.add_clause([lit(x) for x in c])


# --------------------------------------------------------------------------
# the counter-example query


@dataclass(frozen=True)
class CounterExample:
    graph: GraphBits
    perm: Permutation
    index: int

    def pattern(self) -> GraphPattern:
        p = derive_pattern(self.perm, self.index)
        if p is BOT or not covers(p, self.graph):
            raise CegarError(f"pattern of {self.perm} at {self.index} does not cover {self.graph}")
        return p


class CounterExampleQuery:
    """Incremental solver holding problem, permutation, image and lex constraints."""

    def __init__(self, n: int, problem: CnfFormula | None = None, guarded: bool = False):
        self.n = n
        self.m = m = num_edges(n)
        s = self.solver = Solver()
        s.ensure_vars(m)
        self.edges = list(range(1, m + 1))
        self.enc = encode_permutation(s, n)
        encode_image(s, self.enc, self.edges)
        encode_lex_less(s, self.enc.image, self.edges)
        _copy_problem(s, problem, m)
        self.registry = XorRegistry(s)
        self.guarded = guarded
        self.activation: dict[tuple[int, ...], int] = {}

    def block(self, p: GraphPattern) -> int | None:
        """Add the not-covered clause; guarded queries return its activation literal."""
        clause = to_clause(p, self.edges, self.registry)
        if not self.guarded:
            self.solver.add_clause(clause)
            return None
        a = self.solver.new_var()
        self.solver.add_clause(clause + [-a])
        self.activation[p.cells] = a
        return a

    def find(self, c: PermClass, assumptions: Iterable[int] = ()) -> CounterExample | None:
        s = self.solver
        if not s.solve(self.enc.assumptions(c) + list(assumptions)):
            return None
        g = GraphBits.from_bits([int(s.value(v)) for v in self.edges], self.n)
        pi = self.enc.decode(s.value)
        f = [int(s.value(v)) for v in self.enc.image]
        image = apply_perm(pi, g)
        if list(image.bits) != f:
            raise CegarError("image variables disagree with the decoded permutation")
        i = lex_strict_at(image, g)
        if isinstance(i, Lex):
            raise CegarError(f"model is not a counter-example: pi(G) {i.name} G")
        return CounterExample(g, pi, i)


# --------------------------------------------------------------------------
# CEGAR loops


@dataclass
class LayerStats:
    layer: PermClass
    iterations: int
    patterns: int  # break size at the end of the layer
    seconds: float


@dataclass
class CegarRun:
    n: int
    layers: list[LayerStats]
    psi: PatternSet
    complete: bool
    reduced: PatternSet | None = None

    @property
    def iterations(self) -> int:
        return sum(s.iterations for s in self.layers)

    def snapshot(self, layer: PermClass) -> PatternSet:
        """The partial break as it stood at the end of ``layer``."""
        for s in self.layers:
            if s.layer is layer:
                return self.psi[: s.patterns]
        raise KeyError(f"layer {layer} was not run")


def cegar_layer(query: CounterExampleQuery, c: PermClass, psi: PatternSet, rnd: int = 0) -> int:
    """Saturate one layer; returns the number of iterations (= patterns added)."""
    iterations = 0
    while True:
        cex = query.find(c)
        if cex is None:
            return iterations
        p = cex.pattern()
        if not psi.add(PatternEntry(p, layer=str(c), source=c, round=rnd + iterations + 1)):
            raise CegarError(f"counter-example {cex.graph} is covered by {p}, already in the break")
        query.block(p)
        iterations += 1


def _check_layers(layers: Sequence[PermClass]) -> None:
    ranks = [CLASS_CHAIN.index(c) for c in layers]
    if not ranks or ranks != sorted(set(ranks)):
        raise ValueError("layers must be distinct classes in chain order ct, t, ci+t, di, i, all")


def layered_cegar(
    n: int,
    layers: Sequence[PermClass] = CLASS_CHAIN,
    problem: CnfFormula | None = None,
    reduce_break: bool = False,
) -> CegarRun:
    """Run :func:`cegar_layer` for each class in order on one solver."""
    layers = [PermClass.parse(c) if isinstance(c, str) else c for c in layers]
    _check_layers(layers)
    query = CounterExampleQuery(n, problem)
    psi = PatternSet(n)
    stats = []
    for c in layers:
        t0 = time.perf_counter()
        it = cegar_layer(query, c, psi, rnd=sum(s.iterations for s in stats))
        stats.append(LayerStats(c, it, len(psi), time.perf_counter() - t0))
    run = CegarRun(n, stats, psi, complete=layers[-1] is PermClass.ALL)
    if reduce_break:
        if not run.complete:
            raise IncompleteBreakError("reduce needs a complete break (final layer 'all')")
        run.reduced = reduce(psi, n, problem)
    return run


def reduce(psi: PatternSet, n: int, problem: CnfFormula | None = None) -> PatternSet:
    """Drop redundant patterns, latest first, until the break is irredundant."""
    query = CounterExampleQuery(n, problem, guarded=True)
    acts = [query.block(p) for p in psi]
    if query.find(PermClass.ALL, acts) is not None:
        raise IncompleteBreakError("reduce needs a complete break")
    keep = [True] * len(acts)
    for k in reversed(range(len(acts))):
        others = [a for j, a in enumerate(acts) if j != k and keep[j]]
        if query.find(PermClass.ALL, others) is None:
            keep[k] = False
            query.solver.add_clause([-acts[k]])
        else:
            query.solver.add_clause([acts[k]])
    return PatternSet(n, [e for e, flag in zip(psi.entries, keep) if flag])


ORACLE_MAX_ORDER = 6


def verify_complete(psi: PatternSet | Iterable[GraphPattern], n: int, problem: CnfFormula | None = None) -> bool:
    """No graph of the problem is reducible by any permutation yet uncovered.

    Up to order 6 the SAT answer is cross-checked against the exhaustive
    minimality oracle.
    """
    query = CounterExampleQuery(n, problem)
    pats = list(psi)
    for p in pats:
        query.block(p)
    answer = query.find(PermClass.ALL) is None
    if n <= ORACLE_MAX_ORDER:
        from .sweep import canonical_codes, covered_mask
        from .metrics import problem_codes

        mask = covered_mask(n, pats)
        codes = problem_codes(n, problem)
        canon = set(canonical_codes(n).tolist())
        survivors = codes[~mask[codes]]
        oracle = all(int(c) in canon for c in survivors)
        if oracle != answer:
            raise CegarError(f"SAT says complete={answer}, exhaustive oracle says {oracle}")
    return answer


def counterexample_cnf(n: int, c: PermClass, psi: Iterable[GraphPattern] = (), problem: CnfFormula | None = None) -> CnfFormula:
    """The counter-example query as a standalone formula, for external solvers."""
    m = num_edges(n)
    edges = list(range(1, m + 1))
    f = CnfFormula(var_count=m)
    enc = encode_permutation(f, n, c)
    encode_image(f, enc, edges)
    encode_lex_less(f, enc.image, edges)
    _copy_problem(f, problem, m)
    reg = XorRegistry(f)
    for p in psi:
        f.add_clause(to_clause(p, edges, reg))
    f.comments.append(f"edge-vars 1..{m}")
    f.comments.append("perm-matrix " + " ".join(str(enc.matrix[u][v]) for u in range(1, n + 1) for v in range(1, n + 1)))
    return f
