"""Exhaustive sweeps over the ``2**m`` graphs of a fixed order.

Graph codes (see :mod:`patbreak.graphs`) are held in numpy integer arrays.
A vertex permutation acts on a whole array of codes through per-byte lookup
tables, which keeps an order-7 sweep (2**21 graphs) to a few array passes.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

import numpy as np

from .graphs import (
    CLASS_CHAIN,
    OrderError,
    PermClass,
    Permutation,
    class_members,
    induced_edge_perm,
    num_edges,
)
from .patterns import BOT, GraphPattern

SWEEP_MAX_ORDER = 7
BIG_SWEEP_MAX_ORDER = 8


def check_sweep_order(n: int, big: bool = False) -> None:
    limit = BIG_SWEEP_MAX_ORDER if big else SWEEP_MAX_ORDER
    if n > limit:
        hint = " (order 8 needs big=True)" if n == BIG_SWEEP_MAX_ORDER and not big else ""
        raise OrderError(f"exhaustive sweep over order {n} graphs refused (limit {limit}){hint}")


def code_dtype(n: int):
    return np.uint32 if num_edges(n) <= 32 else np.uint64


def all_codes(n: int, big: bool = False) -> np.ndarray:
    check_sweep_order(n, big)
    return np.arange(1 << num_edges(n), dtype=code_dtype(n))


@lru_cache(maxsize=8192)
def _byte_tables(pi: Permutation) -> tuple[np.ndarray, ...]:
    n = pi.n
    m = num_edges(n)
    dtype = code_dtype(n)
    # input bit (m - q) moves to output bit (m - p) where tau(p) = q
    out_bit = [0] * m
    for p, q in enumerate(induced_edge_perm(pi).map, start=1):
        out_bit[m - q] = m - p
    byte = np.arange(256, dtype=np.int64)
    tables = []
    for base in range(0, m, 8):
        table = np.zeros(256, dtype=dtype)
        for k in range(min(8, m - base)):
            table |= (((byte >> k) & 1) << out_bit[base + k]).astype(dtype)
        tables.append(table)
    return tuple(tables)


def permute_codes(codes: np.ndarray, pi: Permutation) -> np.ndarray:
    """Codes of ``pi(G)`` for every code ``G`` in the array."""
    tables = _byte_tables(pi)
    out = tables[0][codes & 0xFF]
    for k in range(1, len(tables)):
        out |= tables[k][(codes >> (8 * k)) & 0xFF]
    return out


def minimal_codes(n: int, perms: Iterable[Permutation], codes: np.ndarray | None = None, big: bool = False) -> np.ndarray:
    """The codes ``G`` (from ``codes``, default all graphs) with ``G <= pi(G)`` for every ``pi``."""
    survivors = all_codes(n, big) if codes is None else codes
    for pi in perms:
        if survivors.size == 0:
            break
        survivors = survivors[survivors <= permute_codes(survivors, pi)]
    return survivors


@lru_cache(maxsize=64)
def _class_minimal(n: int, c: PermClass, big: bool) -> np.ndarray:
    out = minimal_codes(n, class_members(n, c), big=big)
    out.setflags(write=False)
    return out


def class_minimal_codes(n: int, c: PermClass, big: bool = False) -> np.ndarray:
    """Graphs that no permutation of class ``c`` makes smaller, sorted."""
    check_sweep_order(n, big)
    return _class_minimal(n, c, big)


def canonical_codes(n: int, big: bool = False) -> np.ndarray:
    """Lex-leader codes of order ``n``; ``class_members`` tries cheap classes first."""
    return class_minimal_codes(n, PermClass.ALL, big)


def layer_minimal_counts(n: int, codes: np.ndarray | None = None, big: bool = False) -> dict[PermClass, int]:
    """Survivor counts after each cumulative layer of the class chain."""
    check_sweep_order(n, big)
    survivors = all_codes(n, big) if codes is None else codes
    counts = {}
    seen = set()
    for c in CLASS_CHAIN:
        fresh = [pi for pi in class_members(n, c) if pi.image not in seen]
        seen.update(pi.image for pi in fresh)
        survivors = minimal_codes(n, fresh, survivors)
        counts[c] = int(survivors.size)
    return counts


def instance_codes(p: GraphPattern) -> np.ndarray:
    """Codes of all instances of ``p``."""
    if p is BOT:
        return np.zeros(0, dtype=code_dtype(1))
    dtype = code_dtype(p.n)
    m = p.m
    _, one, _ = p.masks
    out = np.array([one], dtype=dtype)
    for cls_ in p.var_classes:
        mask = 0
        for q in cls_:
            mask |= 1 << (m - q)
        out = np.concatenate([out, out | dtype(mask)])
    return out


def covered_mask(n: int, patterns: Iterable[GraphPattern], big: bool = False) -> np.ndarray:
    """Boolean array over all codes: covered by at least one pattern."""
    check_sweep_order(n, big)
    mask = np.zeros(1 << num_edges(n), dtype=bool)
    for p in patterns:
        mask[instance_codes(p)] = True
    return mask


def covered_in(codes: np.ndarray, patterns: Iterable[GraphPattern]) -> np.ndarray:
    """Boolean array aligned with ``codes``: covered by at least one pattern."""
    hit = np.zeros(codes.shape, dtype=bool)
    for p in patterns:
        zero, one, shared = p.masks
        ok = ((codes & zero) == 0) & ((codes & one) == one)
        for mask in shared:
            v = codes & mask
            ok &= (v == 0) | (v == mask)
        hit |= ok
    return hit
