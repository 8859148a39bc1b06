"""Graph patterns: partially instantiated edge vectors whose instances are non-canonical.

A pattern is a tuple of cells, one per edge position.  Cells are ``0`` and
``1`` for constants and negative integers for variables: ``-1`` is the first
variable to occur, ``-2`` the second, and so on.  Two positions holding the
same variable must carry equal edge values.  This numbering is the normal
form, so structural equality of cell tuples is pattern equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .graphs import (
    GraphBits,
    PermClass,
    Permutation,
    induced_edge_perm,
    num_edges,
    order_from_edges,
)

ZERO = 0
ONE = 1


class PatternError(ValueError):
    pass


class UnionFind:
    """Disjoint sets over ``0..size-1`` with path halving and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

    def copy(self) -> "UnionFind":
        other = UnionFind.__new__(UnionFind)
        other.parent = list(self.parent)
        other.size = list(self.size)
        return other


class _Bottom:
    """The failed derivation: a pattern with no instances."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOT"

    __str__ = __repr__

    def __reduce__(self):
        return (_Bottom, ())


BOT = _Bottom()


@dataclass(frozen=True)
class GraphPattern:
    n: int
    cells: tuple[int, ...]
    provenance: tuple[Permutation, int] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.cells) != num_edges(self.n):
            raise PatternError(f"{len(self.cells)} cells for order {self.n}")

    @classmethod
    def from_cells(cls, cells: Sequence[int], n: int | None = None, provenance=None) -> "GraphPattern":
        """Build a pattern from any consistent labelling; variables get renumbered."""
        if n is None:
            n = order_from_edges(len(cells))
        return cls(n, normalize(cells), provenance)

    @property
    def m(self) -> int:
        return len(self.cells)

    @cached_property
    def var_classes(self) -> tuple[tuple[int, ...], ...]:
        """Positions (1-based) of each variable, in variable order."""
        groups: dict[int, list[int]] = {}
        for p, c in enumerate(self.cells, start=1):
            if c < 0:
                groups.setdefault(c, []).append(p)
        return tuple(tuple(groups[v]) for v in sorted(groups, reverse=True))

    @property
    def num_vars(self) -> int:
        return len(self.var_classes)

    @cached_property
    def masks(self) -> tuple[int, int, tuple[int, ...]]:
        """Zero mask, one mask and one mask per repeated variable, in code-bit layout."""
        m = self.m
        zero = one = 0
        for p, c in enumerate(self.cells, start=1):
            if c == ZERO:
                zero |= 1 << (m - p)
            elif c == ONE:
                one |= 1 << (m - p)
        shared = []
        for cls_ in self.var_classes:
            if len(cls_) > 1:
                mask = 0
                for p in cls_:
                    mask |= 1 << (m - p)
                shared.append(mask)
        return zero, one, tuple(shared)

    def sort_key(self) -> tuple[int, ...]:
        """Lexicographic key with ``0 < 1 < A < B < ...``."""
        return tuple(c if c >= 0 else 1 - c for c in self.cells)

    def __str__(self) -> str:
        return format_cells(self.cells)


def normalize(cells: Sequence) -> tuple[int, ...]:
    """Renumber variables by first occurrence.

    Constants are the integers ``0``/``1``; anything else (negative ints,
    strings) is a variable name.
    """
    names: dict = {}
    out = []
    for c in cells:
        if not isinstance(c, str) and c in (0, 1) and c is not True and c is not False:
            out.append(int(c))
        else:
            if c not in names:
                names[c] = -(len(names) + 1)
            out.append(names[c])
    return tuple(out)


# --------------------------------------------------------------------------
# derivation


def _tau(pi: Permutation) -> list[int]:
    """Zero-based induced edge map."""
    return [q - 1 for q in induced_edge_perm(pi).map]


def _cells_from(uf: UnionFind, m: int, zero_root: int, one_root: int) -> tuple[int, ...]:
    names: dict[int, int] = {}
    out = []
    find = uf.find
    for p in range(m):
        r = find(p)
        if r == zero_root:
            out.append(ZERO)
        elif r == one_root:
            out.append(ONE)
        else:
            v = names.get(r)
            if v is None:
                v = names[r] = -(len(names) + 1)
            out.append(v)
    return tuple(out)


def derive_patterns(pi: Permutation) -> Iterator[tuple[int, GraphPattern | _Bottom]]:
    """``(i, pat_i(pi))`` for every position ``i`` in order, sharing the prefix unification.

    ``pat_i`` describes the graphs ``G`` with ``pi(G) <^i G``: the edge
    values agree on the permuted prefix, ``pi(G)`` has 0 at ``i`` and ``G``
    has 1.  Since ``pi(G)[p] = G[tau(p)]`` the constraints are the unions
    ``tau(j) ~ j`` for ``j < i`` plus ``tau(i) = 0`` and ``i = 1``.  Before
    the constants are bound no class holds a constant, so the only way to
    fail is ``tau(i) ~ i``.
    """
    tau = _tau(pi)
    m = len(tau)
    uf = UnionFind(m)
    for i in range(m):
        a, b = uf.find(tau[i]), uf.find(i)
        if a == b:
            yield i + 1, BOT
        else:
            yield i + 1, GraphPattern(pi.n, _cells_from(uf, m, a, b), (pi, i + 1))
        uf.union(a, b)


def derive_pattern(pi: Permutation, i: int) -> GraphPattern | _Bottom:
    m = num_edges(pi.n)
    if not 1 <= i <= m:
        raise PatternError(f"position {i} out of range 1..{m}")
    tau = _tau(pi)
    uf = UnionFind(m)
    for j in range(i - 1):
        uf.union(tau[j], j)
    a, b = uf.find(tau[i - 1]), uf.find(i - 1)
    if a == b:
        return BOT
    return GraphPattern(pi.n, _cells_from(uf, m, a, b), (pi, i))


# --------------------------------------------------------------------------
# relations


def covers(p: GraphPattern | _Bottom, g: GraphBits) -> bool:
    if p is BOT:
        return False
    if p.n != g.n:
        raise PatternError(f"order-{p.n} pattern against order-{g.n} graph")
    zero, one, shared = p.masks
    code = g.code
    if code & zero or code & one != one:
        return False
    for mask in shared:
        v = code & mask
        if v and v != mask:
            return False
    return True


def cover_size(p: GraphPattern | _Bottom) -> int:
    if p is BOT:
        return 0
    return 1 << p.num_vars


def instances(p: GraphPattern) -> Iterator[GraphBits]:
    """All graphs covered by ``p``, in increasing order."""
    if p is BOT:
        return
    m = p.m
    _, one, _ = p.masks
    masks = []
    for cls_ in p.var_classes:
        mask = 0
        for q in cls_:
            mask |= 1 << (m - q)
        masks.append(mask)
    masks.sort()
    for sel in range(1 << len(masks)):
        code = one
        k = 0
        while sel:
            if sel & 1:
                code |= masks[k]
            sel >>= 1
            k += 1
        yield GraphBits(p.n, code)


def subsumes(p1: GraphPattern, p2: GraphPattern) -> bool:
    """True iff some substitution of ``p1``'s variables yields ``p2`` exactly."""
    if p1.n != p2.n:
        return False
    binding: dict[int, int] = {}
    for c1, c2 in zip(p1.cells, p2.cells):
        if c1 >= 0:
            if c1 != c2:
                return False
        else:
            prev = binding.setdefault(c1, c2)
            if prev != c2:
                return False
    return True


def unify(p1: GraphPattern, p2: GraphPattern) -> GraphPattern | _Bottom:
    """Most general common instance of two patterns, or ``BOT``."""
    k1, k2 = p1.num_vars, p2.num_vars
    # nodes: sinks 0/1, then variables of p1, then variables of p2
    uf = UnionFind(2 + k1 + k2)

    def node(c: int, offset: int) -> int:
        return c if c >= 0 else 1 + offset - c

    for c1, c2 in zip(p1.cells, p2.cells):
        uf.union(node(c1, 0), node(c2, k1))
    if uf.find(0) == uf.find(1):
        return BOT
    zero_root, one_root = uf.find(0), uf.find(1)
    labels = []
    for c1 in p1.cells:
        r = uf.find(node(c1, 0))
        labels.append(ZERO if r == zero_root else ONE if r == one_root else f"v{r}")
    return GraphPattern(p1.n, normalize(labels))


def orthogonal(p1: GraphPattern, p2: GraphPattern) -> bool:
    if p1 is BOT or p2 is BOT:
        raise PatternError("orthogonality is defined for non-BOT patterns")
    if p1.n != p2.n:
        raise PatternError("patterns of different orders")
    return unify(p1, p2) is BOT


def is_degenerate(p: GraphPattern) -> bool:
    """No constants and no repeated variable: the pattern would cover every graph."""
    zero, one, shared = p.masks
    return not (zero or one or shared)


# --------------------------------------------------------------------------
# clause encoding


class XorRegistry:
    """Shared auxiliaries ``x_ab <-> x_a xor x_b`` keyed by the unordered edge-variable pair.

    ``sink`` is anything with ``new_var()`` and ``add_clause(lits)``; the
    four defining clauses are emitted the first time a pair is requested.
    """

    def __init__(self, sink):
        self.sink = sink
        self.table: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.table)

    def get(self, a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        x = self.table.get(key)
        if x is None:
            x = self.sink.new_var()
            a, b = key
            add = self.sink.add_clause
            add([-x, a, b])
            add([-x, -a, -b])
            add([x, -a, b])
            add([x, a, -b])
            self.table[key] = x
        return x


def clause_parts(p: GraphPattern) -> tuple[list[int], list[int], list[tuple[int, int]]]:
    """Zero positions, one positions and chained equal-variable pairs (all 1-based)."""
    zeros = [q for q, c in enumerate(p.cells, start=1) if c == ZERO]
    ones = [q for q, c in enumerate(p.cells, start=1) if c == ONE]
    pairs = []
    for cls_ in p.var_classes:
        pairs.extend(zip(cls_, cls_[1:]))
    return zeros, ones, pairs


def to_clause(p: GraphPattern, edge_vars: Sequence[int], registry: XorRegistry) -> list[int]:
    """The clause saying "the graph on ``edge_vars`` is not an instance of ``p``".

    ``edge_vars[q-1]`` is the solver variable of edge position ``q``.
    """
    if p is BOT:
        raise PatternError("BOT has no clause: it covers nothing")
    if is_degenerate(p):
        raise PatternError(f"degenerate pattern {p} covers every graph")
    zeros, ones, pairs = clause_parts(p)
    clause = [edge_vars[q - 1] for q in zeros]
    clause += [-edge_vars[q - 1] for q in ones]
    clause += [registry.get(edge_vars[a - 1], edge_vars[b - 1]) for a, b in pairs]
    return clause


def clause_satisfied(p: GraphPattern, g: GraphBits) -> bool:
    """Evaluate ``to_clause(p)`` under ``g`` with every xor auxiliary set consistently."""
    zeros, ones, pairs = clause_parts(p)
    return (
        any(g.bit(q) for q in zeros)
        or any(not g.bit(q) for q in ones)
        or any(g.bit(a) != g.bit(b) for a, b in pairs)
    )


# --------------------------------------------------------------------------
# text format


def _var_name(k: int) -> str:
    if k <= 26:
        return chr(ord("A") + k - 1)
    return f"A{k - 26}"


def format_cells(cells: Sequence[int]) -> str:
    return "[" + ",".join(str(c) if c >= 0 else _var_name(-c) for c in cells) + "]"


_CELL = re.compile(r"^(0|1|[A-Z][0-9]*)$")


def parse_pattern(text: str, n: int | None = None) -> GraphPattern:
    """Parse ``[1,0,A,B,C,D]``; case-sensitive, whitespace-tolerant."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise PatternError(f"pattern must be bracketed: {text!r}")
    toks = [t.strip() for t in body[1:-1].split(",")]
    if any(not _CELL.match(t) for t in toks):
        raise PatternError(f"bad pattern cell in {text!r}")
    cells = [int(t) if t in ("0", "1") else t for t in toks]
    return GraphPattern.from_cells(cells, n)


@dataclass
class PatternEntry:
    pattern: GraphPattern
    delta: int | None = None
    layer: str | None = None
    source: PermClass | None = None
    round: int | None = None


class PatternSet:
    """An ordered, duplicate-free collection of patterns of one order (a symmetry break)."""

    def __init__(self, n: int, patterns: Iterable[GraphPattern | PatternEntry] = ()):
        self.n = n
        self.entries: list[PatternEntry] = []
        self._index: dict[tuple[int, ...], int] = {}
        for p in patterns:
            self.add(p)

    def add(self, item: GraphPattern | PatternEntry, **meta) -> bool:
        """Append unless already present; returns whether it was new."""
        entry = item if isinstance(item, PatternEntry) else PatternEntry(item, **meta)
        p = entry.pattern
        if p is BOT:
            raise PatternError("BOT cannot be part of a symmetry break")
        if p.n != self.n:
            raise PatternError(f"order-{p.n} pattern in an order-{self.n} set")
        if p.cells in self._index:
            return False
        self._index[p.cells] = len(self.entries)
        self.entries.append(entry)
        return True

    def __contains__(self, p: GraphPattern) -> bool:
        return p.cells in self._index

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[GraphPattern]:
        return (e.pattern for e in self.entries)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return PatternSet(self.n, self.entries[k])
        return self.entries[k].pattern

    @property
    def patterns(self) -> list[GraphPattern]:
        return [e.pattern for e in self.entries]

    def cell_set(self) -> set[tuple[int, ...]]:
        return set(self._index)

    def without(self, p: GraphPattern) -> "PatternSet":
        return PatternSet(self.n, [e for e in self.entries if e.pattern.cells != p.cells])

    def covers(self, g: GraphBits) -> bool:
        return any(covers(p, g) for p in self)

    # -- text format ------------------------------------------------------

    def to_text(self, header: dict[str, str] | None = None) -> str:
        lines = [f"# order: {self.n}"]
        for key, value in (header or {}).items():
            lines.append(f"# {key}: {value}")
        for e in self.entries:
            notes = []
            if e.pattern.provenance is not None:
                pi, i = e.pattern.provenance
                notes.append(f"pat_{i}({pi})")
            if e.source is not None:
                notes.append(f"class={e.source}")
            if e.layer is not None:
                notes.append(f"layer={e.layer}")
            if e.round is not None:
                notes.append(f"round={e.round}")
            if e.delta is not None:
                notes.append(f"delta={e.delta}")
            line = str(e.pattern)
            if notes:
                line += "  # " + " ".join(notes)
            lines.append(line)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "PatternSet":
        entries = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                m = re.match(r"#\s*order\s*:\s*(\d+)", line)
                if m:
                    order = int(m.group(1))
                    if n is not None and n != order:
                        raise PatternError(f"file declares order {order}, expected {n}")
                    n = order
                continue
            body, _, comment = line.partition("#")
            p = parse_pattern(body, n)
            if n is None:
                n = p.n
            entries.append(_parse_meta(p, comment))
        if n is None:
            raise PatternError("empty pattern file without an order header")
        return cls(n, entries)

    def save(self, path: str | Path, header: dict[str, str] | None = None) -> None:
        Path(path).write_text(self.to_text(header))

    @classmethod
    def load(cls, path: str | Path, n: int | None = None) -> "PatternSet":
        return cls.from_text(Path(path).read_text(), n)


def _parse_meta(p: GraphPattern, comment: str) -> PatternEntry:
    entry = PatternEntry(p)
    for tok in comment.split():
        m = re.match(r"pat_(\d+)\((\[[\d,\s]*\])\)$", tok)
        if m:
            image = [int(v) for v in m.group(2)[1:-1].split(",")]
            pi = Permutation(tuple(image))
            entry.pattern = GraphPattern(p.n, p.cells, (pi, int(m.group(1))))
            continue
        key, sep, value = tok.partition("=")
        if not sep:
            continue
        if key == "delta":
            entry.delta = int(value)
        elif key == "round":
            entry.round = int(value)
        elif key == "layer":
            entry.layer = value
        elif key == "class":
            entry.source = PermClass.parse(value)
    return entry
