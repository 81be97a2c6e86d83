"""Finite test graphs: paths, cycles, cliques, random graphs and grid truncations.

A truncation keeps the grid ``{0..N-1}^2`` of the infinite ordinal grid
graph (same edge rule) and optionally the pendant tail ``(-1,0) .. (-(n+1),0)``
hanging off the origin.  Capture times in a truncation are *not* those of the
infinite graph: the bounded grid gives the cop extra walls to trap against.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import List, Tuple

from .finite import FiniteGraph

__all__ = [
    "TruncationSpec",
    "grid_adjacent",
    "generate_truncation",
    "truncation_vertices",
    "generate_path",
    "generate_cycle",
    "generate_complete",
    "generate_random",
]


def grid_adjacent(p: Tuple[int, int], q: Tuple[int, int], diagonal_edges: bool = True) -> bool:
    """Edge rule on grid points (any totally ordered coordinates)."""
    (a0, b0), (a1, b1) = p, q
    if p == q:
        return False
    if a0 == a1 == 0 or b0 == b1 == 0:
        return True
    if diagonal_edges and a0 == b0 and a1 == b1:
        return True
    return (a0 < a1 and b0 > b1) or (a0 > a1 and b0 < b1)


@dataclass(frozen=True)
class TruncationSpec:
    grid_size: int
    tail_length: int = 0
    diagonal_edges: bool = True

    def __post_init__(self):
        if self.grid_size < 2:
            raise ValueError(f"grid_size must be at least 2, got {self.grid_size}")
        if self.tail_length < 0:
            raise ValueError(f"tail_length must be non-negative, got {self.tail_length}")

    @property
    def tail_vertices(self) -> int:
        return self.tail_length + 1 if self.tail_length else 0

    @property
    def vertex_count(self) -> int:
        return self.grid_size ** 2 + self.tail_vertices


def truncation_vertices(spec: TruncationSpec) -> List[Tuple[int, int]]:
    """Vertex coordinates in index order: row-major grid, then tail by increasing depth."""
    n = spec.grid_size
    grid = [(a, b) for a in range(n) for b in range(n)]
    return grid + [(-i, 0) for i in range(1, spec.tail_vertices + 1)]


def _label(p: Tuple[int, int]) -> str:
    return f"T({-p[0]})" if p[0] < 0 else f"({p[0]},{p[1]})"


def generate_truncation(spec: TruncationSpec) -> FiniteGraph:
    verts = truncation_vertices(spec)
    n = spec.grid_size
    edges = []
    for i, j in combinations(range(n * n), 2):
        if grid_adjacent(verts[i], verts[j], spec.diagonal_edges):
            edges.append((i, j))
    tail = spec.tail_vertices
    for k in range(tail):
        # T(1) hangs off the origin (index 0); T(k+1) off T(k)
        prev = 0 if k == 0 else n * n + k - 1
        edges.append((prev, n * n + k))
    return FiniteGraph.from_edges(len(verts), edges, [_label(p) for p in verts])


def generate_path(k: int) -> FiniteGraph:
    if k < 1:
        raise ValueError("a path needs at least one vertex")
    return FiniteGraph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def generate_cycle(k: int) -> FiniteGraph:
    if k < 3:
        raise ValueError("a simple cycle needs at least three vertices")
    return FiniteGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def generate_complete(k: int) -> FiniteGraph:
    if k < 1:
        raise ValueError("a complete graph needs at least one vertex")
    return FiniteGraph.from_edges(k, combinations(range(k), 2))


def generate_random(k: int, edge_prob: float, seed: int) -> FiniteGraph:
    """Erdos-Renyi G(k, p), deterministic in ``seed``."""
    if k < 1:
        raise ValueError("need at least one vertex")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge_prob must lie in [0, 1], got {edge_prob}")
    rng = random.Random(seed)
    return FiniteGraph.from_edges(k, [e for e in combinations(range(k), 2) if rng.random() < edge_prob])
