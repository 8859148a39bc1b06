"""Simple graphs as edge vectors, vertex permutations and permutation classes.

Edges of an order-``n`` graph are listed column by column from the upper
triangle of the adjacency matrix, so the pair ``{i, j}`` with ``i < j`` sits
at position ``(j-1)(j-2)/2 + i``.  Positions and vertices are 1-based
everywhere in the public API.

A graph is stored as an integer ``code`` in which position 1 is the most
significant bit.  With that layout the lexicographic order on edge vectors
is plain integer order, which the sweep code relies on.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

MAX_ORDER = 16
MAX_BRUTE_FORCE_ORDER = 10


class OrderError(ValueError):
    """An order is outside the range an operation supports."""


def num_edges(n: int) -> int:
    return n * (n - 1) // 2


def check_order(n: int) -> int:
    if not isinstance(n, int) or not 1 <= n <= MAX_ORDER:
        raise OrderError(f"order must be an integer in 1..{MAX_ORDER}, got {n!r}")
    return n


def edge_index(i: int, j: int, n: int) -> int:
    """Position of the edge ``{i, j}`` (``i < j``) in the column-major edge list."""
    if not (1 <= i < j <= n):
        raise ValueError(f"invalid vertex pair ({i}, {j}) for order {n}")
    return (j - 1) * (j - 2) // 2 + i


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for j in range(2, n + 1) for i in range(1, j))


def edge_pair(p: int, n: int) -> tuple[int, int]:
    """Inverse of :func:`edge_index`."""
    if not 1 <= p <= num_edges(n):
        raise ValueError(f"edge position {p} out of range for order {n}")
    return _pairs(n)[p - 1]


def edge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """All vertex pairs in edge-position order."""
    return _pairs(n)


# --------------------------------------------------------------------------
# graphs


@dataclass(frozen=True, order=True)
class GraphBits:
    """An order-``n`` simple graph packed into an integer.

    Comparison between graphs of the same order is lexicographic comparison
    of their edge vectors.
    """

    n: int
    code: int

    def __post_init__(self):
        check_order(self.n)
        if not 0 <= self.code < (1 << num_edges(self.n)):
            raise ValueError(f"code {self.code} does not fit {num_edges(self.n)} edges")

    @property
    def m(self) -> int:
        return num_edges(self.n)

    @classmethod
    def from_bits(cls, bits: Sequence[int], n: int | None = None) -> "GraphBits":
        m = len(bits)
        if n is None:
            n = order_from_edges(m)
        elif num_edges(n) != m:
            raise ValueError(f"{m} bits do not describe a graph of order {n}")
        code = 0
        for b in bits:
            if b not in (0, 1, True, False):
                raise ValueError(f"edge values must be 0/1, got {b!r}")
            code = (code << 1) | int(b)
        return cls(n, code)

    @classmethod
    def from_edges(cls, n: int, edges) -> "GraphBits":
        m = num_edges(n)
        code = 0
        for i, j in edges:
            i, j = min(i, j), max(i, j)
            code |= 1 << (m - edge_index(i, j, n))
        return cls(n, code)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "GraphBits":
        """Read the ``[b1,...,bm]`` literal syntax."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"graph literal must be bracketed: {text!r}")
        items = [tok.strip() for tok in body[1:-1].split(",") if tok.strip()]
        if any(tok not in ("0", "1") for tok in items):
            raise ValueError(f"graph literal may only hold 0/1: {text!r}")
        return cls.from_bits([int(tok) for tok in items], n)

    @property
    def bits(self) -> tuple[int, ...]:
        m = self.m
        return tuple((self.code >> (m - p)) & 1 for p in range(1, m + 1))

    def bit(self, p: int) -> int:
        return (self.code >> (self.m - p)) & 1

    def has_edge(self, i: int, j: int) -> bool:
        i, j = min(i, j), max(i, j)
        return bool(self.bit(edge_index(i, j, self.n)))

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for p, (i, j) in enumerate(_pairs(self.n), start=1):
            if self.bit(p):
                a[i - 1][j - 1] = a[j - 1][i - 1] = 1
        return a

    def induced(self, k: int) -> "GraphBits":
        """Subgraph induced on vertices ``1..k``.

        Column-major order makes it the length ``k(k-1)/2`` prefix.
        """
        if not 1 <= k <= self.n:
            raise ValueError(f"cannot take the first {k} vertices of an order-{self.n} graph")
        return GraphBits(k, self.code >> (self.m - num_edges(k)))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.bits)) + "]"


def order_from_edges(m: int) -> int:
    n = (1 + math.isqrt(1 + 8 * m)) // 2
    if num_edges(n) != m:
        raise ValueError(f"{m} is not a triangular number of edges")
    return n


# --------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """A vertex permutation; ``image[i-1]`` is the image of vertex ``i``."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"{list(image)} is not a permutation of 1..{len(image)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def swap(cls, n: int, *pairs: tuple[int, int]) -> "Permutation":
        """The involution exchanging each given vertex pair (cycle notation)."""
        image = list(range(1, n + 1))
        for a, b in pairs:
            image[a - 1], image[b - 1] = b, a
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.image, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(tuple(self.image[v - 1] for v in other.image))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.image, start=1))

    def is_involution(self) -> bool:
        return all(self.image[v - 1] == i for i, v in enumerate(self.image, start=1))

    def swapped_pairs(self) -> list[tuple[int, int]]:
        """The 2-cycles ``(i, j)``, ``i < j``; meaningful for involutions."""
        return [(i, v) for i, v in enumerate(self.image, start=1) if i < v and self.image[v - 1] == i]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.image)) + "]"


@dataclass(frozen=True)
class EdgePermutation:
    """Action of a vertex permutation on edge positions.

    ``map[p-1] = q`` means position ``p`` of the permuted graph holds the
    value the original graph has at position ``q``.
    """

    n: int
    map: tuple[int, ...]

    def __call__(self, p: int) -> int:
        return self.map[p - 1]

    def compose(self, other: "EdgePermutation") -> "EdgePermutation":
        return EdgePermutation(self.n, tuple(other.map[q - 1] for q in self.map))


@lru_cache(maxsize=65536)
def induced_edge_perm(pi: Permutation) -> EdgePermutation:
    n = pi.n
    inv = pi.inverse().image
    out = []
    for i, j in _pairs(n):
        a, b = inv[i - 1], inv[j - 1]
        out.append(edge_index(min(a, b), max(a, b), n))
    return EdgePermutation(n, tuple(out))


def apply_perm(pi: Permutation, g: GraphBits) -> GraphBits:
    if pi.n != g.n:
        raise ValueError(f"permutation of order {pi.n} applied to graph of order {g.n}")
    m = g.m
    code = 0
    for q in induced_edge_perm(pi).map:
        code = (code << 1) | ((g.code >> (m - q)) & 1)
    return GraphBits(g.n, code)


class Lex(enum.Enum):
    EQUAL = "equal"
    GREATER = "greater"


def lex_strict_at(a: GraphBits, b: GraphBits) -> int | Lex:
    """First differing position if ``a < b``; otherwise a :class:`Lex` marker."""
    if a.m != b.m:
        raise ValueError("graphs of different sizes")
    diff = a.code ^ b.code
    if diff == 0:
        return Lex.EQUAL
    p = a.m - diff.bit_length() + 1
    return p if b.code > a.code else Lex.GREATER


def all_permutations(n: int) -> Iterator[Permutation]:
    for image in itertools.permutations(range(1, n + 1)):
        yield Permutation(image)


def is_canonical(g: GraphBits) -> bool:
    """Brute-force lex-leader test over all of ``S_n``."""
    if g.n > MAX_BRUTE_FORCE_ORDER:
        raise OrderError(f"brute-force canonicity refuses order {g.n} > {MAX_BRUTE_FORCE_ORDER}")
    return all(apply_perm(pi, g).code >= g.code for pi in all_permutations(g.n))


# --------------------------------------------------------------------------
# permutation classes


class PermClass(enum.Enum):
    """Layer classes, each contained in the next."""

    CT = "ct"
    T = "t"
    CI_T = "ci+t"
    DI = "di"
    I = "i"  # noqa: E741
    ALL = "all"

    @classmethod
    def parse(cls, text: str) -> "PermClass":
        key = text.strip().lower().replace("_", "+")
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown permutation class {text!r}")

    @property
    def rank(self) -> int:
        return CLASS_CHAIN.index(self)

    def __le__(self, other: "PermClass") -> bool:
        return self.rank <= other.rank

    def __lt__(self, other: "PermClass") -> bool:
        return self.rank < other.rank

    def __str__(self) -> str:
        return self.value


CLASS_CHAIN = tuple(PermClass)
LAYER_CLASSES = CLASS_CHAIN[:-1]


def _intervals_separated(pairs) -> bool:
    ordered = sorted(pairs)
    return all(ordered[k][1] < ordered[k + 1][0] for k in range(len(ordered) - 1))


def class_test(pi: Permutation, c: PermClass) -> bool:
    """Membership of a non-identity permutation in a layer class.

    ``di`` means the swapped pairs span pairwise separated intervals: no
    crossing, no nesting.
    """
    if pi.is_identity():
        return False
    if c is PermClass.ALL:
        return True
    if not pi.is_involution():
        return False
    pairs = pi.swapped_pairs()
    consecutive = all(j == i + 1 for i, j in pairs)
    if c is PermClass.CT:
        return len(pairs) == 1 and consecutive
    if c is PermClass.T:
        return len(pairs) == 1
    if c is PermClass.CI_T:
        return len(pairs) == 1 or consecutive
    if c is PermClass.DI:
        return _intervals_separated(pairs)
    return True


def smallest_class(pi: Permutation) -> PermClass | None:
    for c in CLASS_CHAIN:
        if class_test(pi, c):
            return c
    return None


def _involution_pairings(elems: list[int]):
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    yield from _involution_pairings(rest)
    for k, other in enumerate(rest):
        for tail in _involution_pairings(rest[:k] + rest[k + 1 :]):
            yield [(first, other)] + tail


@lru_cache(maxsize=None)
def _involutions_by_class(n: int) -> dict[PermClass, tuple[Permutation, ...]]:
    """Non-identity involutions grouped by their smallest class."""
    groups: dict[PermClass, list[Permutation]] = {c: [] for c in LAYER_CLASSES}
    for pairs in _involution_pairings(list(range(1, n + 1))):
        if pairs:
            pi = Permutation.swap(n, *pairs)
            groups[smallest_class(pi)].append(pi)
    return {c: tuple(sorted(v, key=lambda p: p.image)) for c, v in groups.items()}


def _non_involutions(n: int) -> Iterator[Permutation]:
    for image in itertools.permutations(range(1, n + 1)):
        if any(image[v - 1] != i for i, v in enumerate(image, start=1)):
            yield Permutation(image)


def class_members(n: int, c: PermClass) -> Iterator[Permutation]:
    """Non-identity members of ``c``, smallest classes first.

    Within one class stratum permutations come in increasing image order, so
    the first permutation yielding any pattern also has its smallest class.
    """
    check_order(n)
    if c is PermClass.ALL and n > MAX_BRUTE_FORCE_ORDER:
        raise OrderError(f"refusing to list all of S_{n}")
    groups = _involutions_by_class(n)
    for layer in LAYER_CLASSES:
        if layer <= c:
            yield from groups[layer]
    if c is PermClass.ALL:
        yield from _non_involutions(n)


def class_size(n: int, c: PermClass) -> int:
    if c is PermClass.ALL:
        return math.factorial(n) - 1
    groups = _involutions_by_class(n)
    return sum(len(groups[layer]) for layer in LAYER_CLASSES if layer <= c)
