"""Exact one-cop, one-robber solving on finite graphs.

Adjacency is kept as bit-rows (python ints), so neighbourhood unions and
intersections run word-parallel.  The capture-time table is the least
fixpoint of the rank relations::

    R_0(u, v)     iff u == v
    R_k+1(u, v)   iff every x in N[u] has some y in N[v] with R_k(x, y)

``values[u][v]`` is the least ``k`` with ``R_k(u, v)``; pairs never related
get :data:`ROBBER_WINS`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array

__all__ = [
    "ROBBER_WINS",
    "NOT_DISMANTLABLE",
    "FiniteGraph",
    "EtaTable",
    "CopPolicy",
    "GraphSizeError",
    "closed_neighborhood",
    "dominates",
    "dismantle",
    "eta_all",
    "naive_game_value",
    "naive_table",
    "recursion_violations",
    "optimal_cop_policy",
    "check_graph",
    "CaptureTimeSolver",
]

#: Entry of an eta table for pairs from which the cop never catches the robber.
ROBBER_WINS = -1
#: Returned by :func:`dismantle` when no elimination order exists.
NOT_DISMANTLABLE = None

NAIVE_MAX_VERTICES = 12


class GraphSizeError(ValueError):
    pass


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FiniteGraph:
    """Undirected simple graph on vertices ``0..n-1`` with bit-row adjacency."""

    rows: Tuple[int, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.rows)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        if len(self.labels) != n:
            raise ValueError("one label per vertex required")
        if len(set(self.labels)) != n:
            raise ValueError("vertex labels must be distinct")
        full = (1 << n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} refers to a vertex outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in _bits(row):
                if not self.rows[w] >> v & 1:
                    raise ValueError(f"adjacency not symmetric between {v} and {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], labels: Sequence[str] = ()) -> "FiniteGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(tuple(rows), tuple(labels))

    @classmethod
    def from_matrix(cls, matrix, labels: Sequence[str] = ()) -> "FiniteGraph":
        a = np.asarray(matrix, dtype=bool)
        rows = tuple(sum(1 << int(j) for j in np.flatnonzero(r)) for r in a)
        return cls(rows, tuple(labels))

    @property
    def vertex_count(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def closed_rows(self) -> Tuple[int, ...]:
        return _closed_rows(self.rows)

    def neighbors(self, v: int) -> List[int]:
        return list(_bits(self.rows[v]))

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(len(self.rows)) for v in _bits(self.rows[u]) if u < v]

    def to_matrix(self) -> np.ndarray:
        n = len(self.rows)
        out = np.zeros((n, n), dtype=bool)
        for u, row in enumerate(self.rows):
            for v in _bits(row):
                out[u, v] = True
        return out

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no vertex labelled {label!r}") from None


@lru_cache(maxsize=256)
def _closed_rows(rows: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(r | 1 << v for v, r in enumerate(rows))


def _check_vertex(G: FiniteGraph, v: int) -> None:
    if not 0 <= v < len(G.rows):
        raise IndexError(f"vertex {v} out of range for a graph on {len(G.rows)} vertices")


def closed_neighborhood(G: FiniteGraph, v: int) -> set:
    _check_vertex(G, v)
    return set(_bits(G.closed_rows[v]))


def dominates(G: FiniteGraph, y: int, x: int) -> bool:
    """True iff N[x] is contained in N[y]."""
    _check_vertex(G, x)
    _check_vertex(G, y)
    closed = G.closed_rows
    return closed[x] & ~closed[y] == 0


def dismantle(G: FiniteGraph) -> Optional[List[int]]:
    """Elimination order by repeated removal of dominated vertices.

    Returns all vertices in removal order (the last one is the survivor), or
    ``NOT_DISMANTLABLE``.  Always removes the smallest dominated vertex,
    dominated by the smallest possible dominator.
    """
    n = len(G.rows)
    if n == 0:
        raise ValueError("cannot dismantle the empty graph")
    closed = G.closed_rows
    alive = (1 << n) - 1
    order = []
    while alive & (alive - 1):
        for x in _bits(alive):
            nx = closed[x] & alive
            if any(nx & ~closed[y] == 0 for y in _bits(alive & ~(1 << x))):
                order.append(x)
                alive &= ~(1 << x)
                break
        else:
            return NOT_DISMANTLABLE
    order.append(alive.bit_length() - 1)
    return order


@dataclass(frozen=True, eq=False)
class EtaTable:
    """Capture times ``values[u, v]`` (robber at ``u`` moves first, cop at ``v``)."""

    values: np.ndarray
    labels: Tuple[str, ...] = ()
    sweeps: int = 0

    @property
    def eta_per_cop_start(self) -> np.ndarray:
        vals = self.values
        worst = vals.max(axis=0)
        return np.where((vals == ROBBER_WINS).any(axis=0), ROBBER_WINS, worst)

    @property
    def capture_time(self) -> int:
        per = self.eta_per_cop_start
        finite = per[per != ROBBER_WINS]
        return int(finite.min()) if finite.size else ROBBER_WINS

    @property
    def max_capture_time(self) -> int:
        per = self.eta_per_cop_start
        if (per == ROBBER_WINS).any():
            return ROBBER_WINS
        return int(per.max())

    @property
    def cop_win(self) -> bool:
        return self.capture_time != ROBBER_WINS

    def to_dict(self) -> dict:
        def enc(x):
            return "ROBBER_WINS" if x == ROBBER_WINS else int(x)

        return {
            "labels": list(self.labels),
            "values": [[enc(x) for x in row] for row in self.values],
            "eta_per_cop_start": [enc(x) for x in self.eta_per_cop_start],
            "capture_time": enc(self.capture_time),
            "max_capture_time": enc(self.max_capture_time),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EtaTable":
        def dec(x):
            return ROBBER_WINS if x == "ROBBER_WINS" else int(x)

        values = np.array([[dec(x) for x in row] for row in data["values"]], dtype=np.int64)
        return cls(values, tuple(data.get("labels", ())))


def eta_all(G: FiniteGraph, check_monotone: bool = True) -> EtaTable:
    """Full capture-time table by fixpoint iteration of the rank relations."""
    n = len(G.rows)
    if n == 0:
        raise ValueError("empty graph")
    closed = G.closed_rows
    relation = [1 << u for u in range(n)]
    values = np.full((n, n), ROBBER_WINS, dtype=np.int64)
    np.fill_diagonal(values, 0)
    k = 0
    while True:
        # reach[x]: cop starts v from which some reply y in N[v] has R_k(x, y)
        reach = []
        for x in range(n):
            acc = 0
            for y in _bits(relation[x]):
                acc |= closed[y]
            reach.append(acc)
        new = []
        for u in range(n):
            acc = (1 << n) - 1
            for x in _bits(closed[u]):
                acc &= reach[x]
                if not acc:
                    break
            new.append(acc)
        k += 1
        changed = False
        for u in range(n):
            if check_monotone and relation[u] & ~new[u]:
                raise AssertionError(f"rank relation shrank at sweep {k}, row {u}")
            fresh = new[u] & ~relation[u]
            if fresh:
                changed = True
                for v in _bits(fresh):
                    values[u, v] = k
        relation = new
        if not changed:
            break
    return EtaTable(values, G.labels, sweeps=k)


def recursion_violations(G: FiniteGraph, table: EtaTable) -> List[Tuple[int, int, int, int]]:
    """Finite pairs u != v where ``values[u, v]`` differs from one more than the
    worst robber step followed by the best cop reply.  Returns (u, v, stored, recomputed)."""
    vals = table.values
    n = len(G.rows)
    inf = np.iinfo(np.int64).max
    big = np.where(vals == ROBBER_WINS, inf, vals)
    closed = [list(_bits(r)) for r in G.closed_rows]
    out = []
    for u in range(n):
        for v in range(n):
            stored = int(vals[u, v])
            if u == v or stored == ROBBER_WINS:
                continue
            worst = max(int(big[x, closed[v]].min()) for x in closed[u])
            expect = ROBBER_WINS if worst == inf else worst + 1
            if expect != stored:
                out.append((u, v, stored, expect))
    return out


def naive_table(G: FiniteGraph, max_vertices: int = NAIVE_MAX_VERTICES) -> np.ndarray:
    """Retrograde analysis of the alternating game over (robber, cop, turn) states.

    Independent of :func:`eta_all`: states are resolved layer by layer with
    explicit turns, counting cop moves until the cop stands on the robber.
    """
    n = len(G.rows)
    if n > max_vertices:
        raise GraphSizeError(f"naive oracle limited to {max_vertices} vertices, got {n}")
    nbrs = [[v] + G.neighbors(v) for v in range(n)]
    UNKNOWN = -2
    robber_turn = [[UNKNOWN] * n for _ in range(n)]
    cop_turn = [[UNKNOWN] * n for _ in range(n)]
    for v in range(n):
        robber_turn[v][v] = 0
        cop_turn[v][v] = 0
    k = 0
    while True:
        progress = False
        # cop-to-move states resolved with k+1 cop moves
        newly = []
        for r in range(n):
            for c in range(n):
                if cop_turn[r][c] != UNKNOWN:
                    continue
                for c2 in nbrs[c]:
                    if c2 == r or robber_turn[r][c2] != UNKNOWN and robber_turn[r][c2] <= k:
                        newly.append((r, c))
                        break
        for r, c in newly:
            cop_turn[r][c] = k + 1
            progress = True
        # robber-to-move states whose every option is decided
        for r in range(n):
            for c in range(n):
                if robber_turn[r][c] != UNKNOWN:
                    continue
                best = 0
                for r2 in nbrs[r]:
                    # stepping onto the cop ends the game at once
                    val = 0 if r2 == c else cop_turn[r2][c]
                    if val == UNKNOWN:
                        break
                    best = max(best, val)
                else:
                    robber_turn[r][c] = best
                    progress = True
        k += 1
        if not progress:
            break
    out = np.array(robber_turn, dtype=np.int64)
    out[out == UNKNOWN] = ROBBER_WINS
    return out


def naive_game_value(G: FiniteGraph, u: int, v: int, max_vertices: int = NAIVE_MAX_VERTICES) -> int:
    _check_vertex(G, u)
    _check_vertex(G, v)
    return int(_naive_cached(G.rows, max_vertices)[u, v])


@lru_cache(maxsize=64)
def _naive_cached(rows: Tuple[int, ...], max_vertices: int) -> np.ndarray:
    return naive_table(FiniteGraph(rows), max_vertices)


@dataclass(frozen=True, eq=False)
class CopPolicy:
    """``move[x, v]``: the cop's reply from ``v`` after the robber stepped to ``x``."""

    move: np.ndarray

    def __call__(self, robber: int, cop: int) -> int:
        return int(self.move[robber, cop])


def optimal_cop_policy(G: FiniteGraph, table: EtaTable) -> CopPolicy:
    n = len(G.rows)
    closed = G.closed_rows
    big = np.iinfo(np.int64).max
    ranks = np.where(table.values == ROBBER_WINS, big, table.values)
    move = np.empty((n, n), dtype=np.int64)
    for v in range(n):
        options = np.fromiter(_bits(closed[v]), dtype=np.int64)
        # np.argmin picks the first minimum; options are in increasing order
        best = ranks[:, options].argmin(axis=1)
        move[:, v] = options[best]
    return CopPolicy(move)


def check_graph(G, *, allow_empty: bool = False) -> FiniteGraph:
    """Accept a FiniteGraph or a square symmetric 0/1 matrix."""
    if isinstance(G, FiniteGraph):
        graph = G
    else:
        a = check_array(G, dtype=None, ensure_2d=True, ensure_min_samples=0 if allow_empty else 1,
                        ensure_min_features=0 if allow_empty else 1)
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
        a = a.astype(bool)
        if np.diag(a).any():
            raise ValueError("adjacency matrix has self-loops")
        if not (a == a.T).all():
            raise ValueError("adjacency matrix is not symmetric")
        graph = FiniteGraph.from_matrix(a)
    if not allow_empty and len(graph) == 0:
        raise ValueError("graph has no vertices")
    return graph


class CaptureTimeSolver(BaseEstimator):
    """Estimator wrapper: ``fit`` a graph, ``predict`` capture times of (robber, cop) pairs.

    Parameters
    ----------
    cross_check : bool
        Re-solve with the naive game oracle and fail on any disagreement.
        Only allowed for graphs up to ``oracle_max_vertices`` vertices.
    oracle_max_vertices : int
        Size guard for the oracle.
    """

    def __init__(self, cross_check: bool = False, oracle_max_vertices: int = NAIVE_MAX_VERTICES):
        self.cross_check = cross_check
        self.oracle_max_vertices = oracle_max_vertices

    def fit(self, X, y=None):
        graph = check_graph(X)
        table = eta_all(graph)
        if self.cross_check:
            oracle = naive_table(graph, self.oracle_max_vertices)
            bad = np.argwhere(oracle != table.values)
            if bad.size:
                u, v = bad[0]
                raise AssertionError(
                    f"solver and oracle disagree at ({u}, {v}): {table.values[u, v]} != {oracle[u, v]}")
        self.graph_ = graph
        self.table_ = table
        self.eta_ = table.eta_per_cop_start
        self.capture_time_ = table.capture_time
        self.max_capture_time_ = table.max_capture_time
        self.policy_ = optimal_cop_policy(graph, table)
        self.n_vertices_ = len(graph)
        return self

    def _check_fitted(self):
        if not hasattr(self, "table_"):
            raise NotFittedError("CaptureTimeSolver is not fitted yet; call fit first")

    def predict(self, pairs) -> np.ndarray:
        """Capture time for each (robber, cop) row of ``pairs``."""
        self._check_fitted()
        p = check_array(pairs, dtype=np.int64, ensure_min_samples=0)
        if p.shape[1] != 2:
            raise ValueError("pairs must have two columns: robber, cop")
        if p.size and (p.min() < 0 or p.max() >= self.n_vertices_):
            raise IndexError("vertex index out of range")
        return self.table_.values[p[:, 0], p[:, 1]]

    def transform(self, X=None) -> np.ndarray:
        """The full table for the fitted graph."""
        self._check_fitted()
        return self.table_.values.copy()

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X, y).transform()
