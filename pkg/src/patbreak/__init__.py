"""Symmetry breaks for graph search built from graph patterns."""

from .graphs import GraphBits, PermClass, Permutation, apply_perm, edge_index, edge_pair, induced_edge_perm, is_canonical
from .patterns import BOT, GraphPattern, PatternSet, covers, derive_pattern, orthogonal, subsumes, to_clause

__version__ = "0.1.0"

__all__ = [
    "BOT",
    "GraphBits",
    "GraphPattern",
    "PatternSet",
    "PermClass",
    "Permutation",
    "apply_perm",
    "covers",
    "derive_pattern",
    "edge_index",
    "edge_pair",
    "induced_edge_perm",
    "is_canonical",
    "orthogonal",
    "subsumes",
    "to_clause",
]
