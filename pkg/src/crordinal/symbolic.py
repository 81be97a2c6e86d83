"""The infinite ordinal grid graphs, handled symbolically.

Vertices are grid points ``(a, b)`` with ordinal coordinates below ``gamma``
plus, optionally, a finite pendant path ``T(1) .. T(n+1)`` hanging off the
origin (``T(i)`` stands for the point ``(-i, 0)``).  Two grid points are
adjacent when both lie on the x-axis, both on the y-axis, both on the
diagonal (unless ``diagonal_edges`` is off), or when one lies strictly
above-left of the other.

This module answers capture-time questions without enumerating anything:
adjacency costs a handful of ordinal comparisons, :func:`eta_bounds` gives a
closed-form interval for the capture time of any pair, and :func:`witness`
produces the cop reply that drives a recorded descent certificate
(:func:`certify`).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .ordinal import (
    ONE,
    ZERO,
    Ordinal,
    OrdinalLike,
    format_ordinal,
    ordinal,
    parse,
    random_below,
    random_between,
)

__all__ = [
    "Grid",
    "Tail",
    "ORIGIN",
    "Vertex",
    "VertexError",
    "HypothesisViolation",
    "SymbolicGraph",
    "OrdinalBound",
    "Witness",
    "Claim",
    "Step",
    "CertNode",
    "Certificate",
    "Violation",
    "LEMMAS",
    "parse_vertex",
    "format_vertex",
    "vertex_key",
    "adjacent",
    "in_closed",
    "eta_bounds",
    "rho",
    "claim_rank",
    "witness",
    "certify",
    "NeighborhoodSampler",
]


class VertexError(ValueError):
    pass


class HypothesisViolation(ValueError):
    """A witness was asked about a position its argument does not cover."""


@dataclass(frozen=True)
class Grid:
    a: Ordinal
    b: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "a", ordinal(self.a))
        object.__setattr__(self, "b", ordinal(self.b))

    @property
    def on_diagonal(self) -> bool:
        return self.a == self.b

    def swap(self) -> "Grid":
        return Grid(self.b, self.a)

    def __str__(self):
        return f"({format_ordinal(self.a)},{format_ordinal(self.b)})"


@dataclass(frozen=True)
class Tail:
    i: int

    def __str__(self):
        return f"T({self.i})"


Vertex = Union[Grid, Tail]
ORIGIN = Grid(ZERO, ZERO)


def vertex_key(v: Vertex):
    """Canonical order: tail vertices deepest first, then grid points lexicographically."""
    if isinstance(v, Tail):
        return (0, -v.i, ZERO)
    return (1, v.a, v.b)


def format_vertex(v: Vertex) -> str:
    return str(v)


def parse_vertex(text: str) -> Vertex:
    """``(a,b)`` with ordinals in the ``w`` grammar, or ``T(i)``."""
    s = text.strip()
    if s[:2] in ("T(", "t(") and s.endswith(")"):
        try:
            i = int(s[2:-1])
        except ValueError:
            raise VertexError(f"bad tail vertex {text!r}") from None
        return Tail(i)
    if not (s.startswith("(") and s.endswith(")")) or s.count(",") != 1:
        raise VertexError(f"expected '(a,b)' or 'T(i)', got {text!r}")
    left, right = s[1:-1].split(",")
    try:
        return Grid(parse(left), parse(right))
    except ValueError as exc:
        raise VertexError(f"bad coordinate in {text!r}: {exc}") from None


@dataclass(frozen=True)
class SymbolicGraph:
    gamma: Ordinal
    tail_n: int = 0
    diagonal_edges: bool = True

    def __post_init__(self):
        object.__setattr__(self, "gamma", ordinal(self.gamma))
        if not self.gamma.is_limit():
            raise ValueError(f"gamma must be an infinite limit ordinal, got {self.gamma}")
        if self.tail_n < 0:
            raise ValueError("tail_n must be non-negative")
        if self.tail_n and not self.diagonal_edges:
            raise ValueError("the diagonal-free variant is only defined without a tail")

    @property
    def tail_vertices(self) -> int:
        return self.tail_n + 1 if self.tail_n else 0

    def contains(self, v: Vertex) -> bool:
        if isinstance(v, Tail):
            return 1 <= v.i <= self.tail_vertices
        return isinstance(v, Grid) and v.a < self.gamma and v.b < self.gamma

    def check(self, *vertices: Vertex) -> None:
        for v in vertices:
            if not self.contains(v):
                raise VertexError(f"{v} is not a vertex of {self}")

    def is_diagonal(self, v: Vertex) -> bool:
        return isinstance(v, Grid) and v.a == v.b

    def __str__(self):
        name = f"G[{format_ordinal(self.gamma)}"
        if self.tail_n:
            name += f"+{self.tail_n}"
        return name + ("]" if self.diagonal_edges else ", no diagonal]")


def _grid_adjacent(u: Grid, v: Grid, diagonal: bool) -> bool:
    a0, b0, a1, b1 = u.a, u.b, v.a, v.b
    if not a0 and not a1:
        return u != v
    if not b0 and not b1:
        return u != v
    c = a0._cmp(a1)
    if c == 0:
        return False
    d = b0._cmp(b1)
    if diagonal and a0 == b0 and a1 == b1:
        return True
    return d != 0 and c != d


def adjacent(G: SymbolicGraph, u: Vertex, v: Vertex) -> bool:
    G.check(u, v)
    return _adjacent(G, u, v)


def _adjacent(G: SymbolicGraph, u: Vertex, v: Vertex) -> bool:
    if isinstance(u, Grid) and isinstance(v, Grid):
        return _grid_adjacent(u, v, G.diagonal_edges)
    if isinstance(u, Tail) and isinstance(v, Tail):
        return abs(u.i - v.i) == 1
    t, g = (u, v) if isinstance(u, Tail) else (v, u)
    return t.i == 1 and g == ORIGIN


def in_closed(G: SymbolicGraph, x: Vertex, v: Vertex) -> bool:
    """``x`` in N[v]."""
    return x == v or _adjacent(G, x, v)


def _tail_depth(v: Vertex) -> Optional[int]:
    if isinstance(v, Tail):
        return v.i
    return 0 if v == ORIGIN else None


def _vertex_at_depth(j: int) -> Vertex:
    return ORIGIN if j == 0 else Tail(j)


def has_diagonal_neighbor(G: SymbolicGraph, v: Vertex) -> bool:
    """Whether N[v] contains a diagonal vertex (full graph only)."""
    return least_diagonal_neighbor(G, v) is not None


def least_diagonal_neighbor(G: SymbolicGraph, v: Vertex) -> Optional[Grid]:
    if isinstance(v, Tail):
        return ORIGIN if v.i == 1 else None
    if not v.a or not v.b:
        return ORIGIN
    if v.a == v.b:
        return ORIGIN if G.diagonal_edges else v
    lo, hi = (v.a, v.b) if v.a < v.b else (v.b, v.a)
    d = lo + 1
    return Grid(d, d) if d < hi else None


def toward_origin(G: SymbolicGraph, v: Grid) -> Grid:
    """Least vertex of N[v] whose closed neighbourhood holds the origin."""
    if in_closed(G, ORIGIN, v):
        return ORIGIN
    d = least_diagonal_neighbor(G, v) if G.diagonal_edges else None
    if d is not None:
        return d
    return Grid(ZERO, v.b + 1)


# -- ranks of the individual arguments ------------------------------------------

def axis_rank(second: Ordinal) -> Ordinal:
    """Rank of an axis chase whose robber has smaller coordinate ``second``."""
    return second if second else ONE


def diagonal_rank(G: SymbolicGraph, alpha: Ordinal) -> Ordinal:
    if alpha > 1:
        return alpha
    if alpha == 1 or not G.tail_n:
        return ordinal(2)
    return ordinal(G.tail_n + 2)


def path_rank(G: SymbolicGraph, j: int) -> Ordinal:
    return ordinal(G.tail_n + 1 - j)


# -- bounds ---------------------------------------------------------------------

@dataclass(frozen=True)
class OrdinalBound:
    lower: Ordinal
    upper: Ordinal
    sources: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.lower > self.upper:
            raise AssertionError(f"empty bound [{self.lower}, {self.upper}] from {self.sources}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> dict:
        return {"lower": str(self.lower), "upper": str(self.upper), "exact": self.exact,
                "sources": list(self.sources)}

    def __str__(self):
        if self.exact:
            return f"exact {self.lower}"
        return f"[{self.lower}, {self.upper}]"


def _x_axis_case(G: SymbolicGraph, u: Grid, v: Grid) -> bool:
    if v.b or not v.a:
        return False
    if u.b < u.a < v.a:
        return True
    return not G.diagonal_edges and u.a == u.b and u.a < v.a


def _gap_case(G: SymbolicGraph, u: Vertex, v: Grid) -> bool:
    # the cop's closed neighbourhood misses the whole diagonal while the
    # robber can step onto it: every reply leaves an unbounded escape
    return (G.diagonal_edges and isinstance(u, Grid) and not has_diagonal_neighbor(G, v)
            and has_diagonal_neighbor(G, u))


def eta_bounds(G: SymbolicGraph, u: Vertex, v: Vertex) -> OrdinalBound:
    """Closed-form interval for the capture time of robber ``u`` against cop ``v``."""
    G.check(u, v)
    if u == v:
        return OrdinalBound(ZERO, ZERO, ("equal",))
    gamma, n = G.gamma, G.tail_n
    lows: List[Tuple[Ordinal, str]] = [(ONE, "distinct")]
    ups: List[Tuple[Ordinal, str]] = []
    du, dv = _tail_depth(u), _tail_depth(v)

    if isinstance(u, Tail) and isinstance(v, Tail):
        if u.i < v.i:
            lows.append((gamma + u.i, "tail-lower"))
            ups.append((gamma + (v.i - 1), "tail-cop"))
        else:
            lows.append((path_rank(G, v.i), "tail-path"))
            ups.append((path_rank(G, v.i), "tail-path"))
    elif isinstance(u, Tail):
        if v == ORIGIN:
            lows.append((path_rank(G, 0), "tail-path"))
            ups.append((path_rank(G, 0), "tail-path"))
        elif in_closed(G, ORIGIN, v):
            ups.append((ordinal(n + 2), "tail-robber"))
        elif u.i == 1 and not has_diagonal_neighbor(G, v):
            lows.append((gamma + 1, "gap"))
            ups.append((gamma + 1, "grid-upper-tail"))
        else:
            ups.append((ordinal(n + 3), "tail-robber"))
    else:
        lows.append((min(u.a, u.b), "min-coordinate"))
        if G.diagonal_edges and u.on_diagonal and not G.is_diagonal(v):
            lows.append((gamma, "diagonal-lower"))
        if isinstance(v, Tail):
            if u == ORIGIN:
                lows.append((gamma, "tail-lower"))
            ups.append((gamma + (v.i - 1), "tail-cop"))
        else:
            if _gap_case(G, u, v):
                lows.append((gamma + 1, "gap"))
                ups.append((gamma + 1, "grid-upper-tail"))
            else:
                ups.append((gamma, "grid-upper"))
            if _x_axis_case(G, u, v):
                ups.append((axis_rank(u.b), "x-axis"))
            if _x_axis_case(G, u.swap(), v.swap()):
                ups.append((axis_rank(u.a), "y-axis"))
            if G.diagonal_edges and u.on_diagonal and v.on_diagonal:
                ups.append((diagonal_rank(G, u.a), "diagonal"))
            if v == ORIGIN:
                ups.append((max(u.a, u.b) + 2, "origin-cop"))
    lower, lsrc = max(lows, key=lambda t: t[0])
    upper, usrc = min(ups, key=lambda t: t[0])
    return OrdinalBound(lower, upper, (lsrc, usrc))


def rho(G: SymbolicGraph) -> Ordinal:
    """Maximum capture time, the supremum of all pairwise capture times.

    With a tail of length n >= 1 this is ``gamma + n``.  Without a tail the
    diagonal-free variant gives ``gamma``; the full graph gives
    ``gamma + 1``: a diagonal robber facing a cop at a point such as (1,2),
    whose closed neighbourhood contains no diagonal vertex, can stay put and
    every cop reply leaves a position of capture time ``gamma``.
    """
    if G.tail_n:
        return G.gamma + G.tail_n
    if G.diagonal_edges:
        return G.gamma + 1
    return G.gamma


# -- witnesses ------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """Cop reply ``vertex`` and the rank of the resulting claim, proven by ``lemma``."""

    vertex: Vertex
    rank: Ordinal
    lemma: str

    def __iter__(self):
        # unpacks as (y, delta)
        return iter((self.vertex, self.rank))


LEMMAS = (
    "equal",
    "x-axis",
    "y-axis",
    "diagonal",
    "grid-upper",
    "grid-upper-tail",
    "origin-cop",
    "tail-cop",
    "tail-path",
    "tail-robber",
)


def _fail(msg: str, *vs: Vertex) -> HypothesisViolation:
    return HypothesisViolation(msg + ": " + ", ".join(str(v) for v in vs))


def claim_rank(G: SymbolicGraph, lemma: str, u: Vertex, v: Vertex) -> Ordinal:
    """The rank ``alpha`` such that ``u <=_alpha v`` is the lemma's conclusion.

    Raises HypothesisViolation when (u, v) is outside the lemma's hypotheses.
    """
    G.check(u, v)
    if lemma == "equal":
        if u != v:
            raise _fail("equality claim on distinct vertices", u, v)
        return ZERO
    if u == v:
        raise _fail(f"{lemma} needs distinct vertices", u)
    if lemma == "x-axis":
        if isinstance(u, Grid) and isinstance(v, Grid) and _x_axis_case(G, u, v):
            return axis_rank(u.b)
        raise _fail("x-axis chase needs u=(a,b), v=(c,0) with b<a<c", u, v)
    if lemma == "y-axis":
        if isinstance(u, Grid) and isinstance(v, Grid) and _x_axis_case(G, u.swap(), v.swap()):
            return axis_rank(u.a)
        raise _fail("y-axis chase needs u=(a,b), v=(0,c) with a<b<c", u, v)
    if lemma == "diagonal":
        if G.diagonal_edges and G.is_diagonal(u) and G.is_diagonal(v):
            return diagonal_rank(G, u.a)
        raise _fail("diagonal argument needs two diagonal vertices", u, v)
    if lemma == "grid-upper":
        if isinstance(u, Grid) and isinstance(v, Grid):
            return G.gamma
        raise _fail("grid bound needs two grid vertices", u, v)
    if lemma == "grid-upper-tail":
        if isinstance(v, Grid):
            return G.gamma + 1
        raise _fail("cop must start on the grid", u, v)
    if lemma == "origin-cop":
        if isinstance(u, Grid) and v == ORIGIN:
            return max(u.a, u.b) + 2
        raise _fail("origin bound needs a grid robber and the cop at the origin", u, v)
    if lemma == "tail-cop":
        if isinstance(v, Tail):
            return G.gamma + (v.i - 1)
        raise _fail("cop must start on the tail", u, v)
    if lemma == "tail-path":
        du, dv = _tail_depth(u), _tail_depth(v)
        if isinstance(u, Tail) and dv is not None and du > dv:
            return path_rank(G, dv)
        raise _fail("path chase needs the robber deeper in the tail than the cop", u, v)
    if lemma == "tail-robber":
        if isinstance(u, Tail) and isinstance(v, Grid) and v != ORIGIN:
            return ordinal(G.tail_n + (2 if in_closed(G, ORIGIN, v) else 3))
        raise _fail("tail robber bound needs a tail robber and a grid cop off the origin", u, v)
    raise ValueError(f"unknown lemma {lemma!r}")


def _axis_reply(G: SymbolicGraph, x: Grid, v: Grid) -> Witness:
    """Reply on the axis beyond the robber; x off the diagonal (or diagonal-free graph)."""
    if x.b <= x.a:
        xi = x.a + 1
        y = Grid(xi, ZERO)
        if not in_closed(G, y, v):
            y = Grid(max(x.a, v.a) + 1, ZERO)
        return Witness(y, axis_rank(x.b), "x-axis")
    xi = x.b + 1
    y = Grid(ZERO, xi)
    if not in_closed(G, y, v):
        y = Grid(ZERO, max(x.b, v.b) + 1)
    return Witness(y, axis_rank(x.a), "y-axis")


def _grid_reply(G: SymbolicGraph, x: Grid, v: Grid) -> Witness:
    """Reply of rank below gamma to a grid robber at x, cop at v (x not in N[v])."""
    if G.diagonal_edges and x.on_diagonal:
        y = least_diagonal_neighbor(G, v)
        if y is None:
            raise _fail("no diagonal vertex in the cop's closed neighbourhood", x, v)
        return Witness(y, diagonal_rank(G, x.a), "diagonal")
    return _axis_reply(G, x, v)


def _tail_reply(G: SymbolicGraph, x: Tail, v: Grid) -> Witness:
    y = toward_origin(G, v)
    if y == ORIGIN:
        return Witness(ORIGIN, path_rank(G, 0), "tail-path")
    return Witness(y, ordinal(G.tail_n + 2), "tail-robber")


def witness(G: SymbolicGraph, lemma: str, u: Vertex, v: Vertex, x: Vertex) -> Witness:
    """Cop reply from ``v`` after the robber moved from ``u`` to ``x``.

    Free choices are resolved minimally.  If the cop can land on ``x`` the
    reply is ``x`` itself with rank 0.
    """
    claim_rank(G, lemma, u, v)
    G.check(x)
    if not in_closed(G, x, u):
        raise _fail("challenge is not in the robber's closed neighbourhood", x, u)
    if in_closed(G, x, v):
        return Witness(x, ZERO, "equal")

    if lemma == "x-axis":
        if not (isinstance(x, Grid) and x.a >= v.a and ZERO < x.b < u.b):
            raise _fail("escape outside the expected region", x)
        return Witness(Grid(x.a + 1, ZERO), axis_rank(x.b), "x-axis")
    if lemma == "y-axis":
        w = witness(G, "x-axis", u.swap(), v.swap(), x.swap())
        return Witness(w.vertex.swap(), w.rank, "y-axis")
    if lemma == "diagonal":
        if isinstance(x, Tail):
            return Witness(ORIGIN, path_rank(G, 0), "tail-path")
        if x.on_diagonal:
            raise _fail("diagonal escape cannot leave the diagonal clique", x)
        return _axis_reply(G, x, v)
    if lemma == "grid-upper":
        if isinstance(x, Tail):
            return _tail_reply(G, x, v)
        return _grid_reply(G, x, v)
    if lemma == "grid-upper-tail":
        if isinstance(x, Tail):
            return _tail_reply(G, x, v)
        if G.diagonal_edges and x.on_diagonal and not has_diagonal_neighbor(G, v):
            return Witness(Grid(ZERO, v.b + 1), G.gamma, "grid-upper")
        return _grid_reply(G, x, v)
    if lemma == "origin-cop":
        if isinstance(x, Tail):
            raise _fail("grid robber cannot reach the tail past the cop", x)
        return _axis_reply(G, x, v)
    if lemma == "tail-cop":
        if v.i == 1:
            if isinstance(x, Tail):
                return Witness(ORIGIN, path_rank(G, 0), "tail-path")
            return Witness(ORIGIN, max(x.a, x.b) + 2, "origin-cop")
        return Witness(Tail(v.i - 1), G.gamma + (v.i - 2), "tail-cop")
    if lemma == "tail-path":
        j = _tail_depth(v)
        if not isinstance(x, Tail) or x.i <= j + 1:
            raise _fail("robber slipped past the cop on the path", x, v)
        return Witness(Tail(j + 1), path_rank(G, j + 1), "tail-path")
    if lemma == "tail-robber":
        if in_closed(G, ORIGIN, v):
            if isinstance(x, Tail):
                return Witness(ORIGIN, path_rank(G, 0), "tail-path")
            raise _fail("robber stepped to the origin next to the cop", x)
        if isinstance(x, Tail):
            return Witness(toward_origin(G, v), ordinal(G.tail_n + 2), "tail-robber")
        y = least_diagonal_neighbor(G, v)
        if y is None:
            raise _fail("no diagonal vertex in the cop's closed neighbourhood", x, v)
        return Witness(y, diagonal_rank(G, ZERO), "diagonal")
    raise ValueError(f"no witness for lemma {lemma!r}")


# -- neighbourhood sampling -----------------------------------------------------

_LIMITS = tuple(parse(t) for t in ("w", "w*2", "w*3", "w^2", "w^2+w", "w^3", "w^w"))


@lru_cache(maxsize=64)
def _limit_points(gamma: Ordinal) -> Tuple[Ordinal, ...]:
    return tuple(c for c in _LIMITS if c < gamma)


class NeighborhoodSampler:
    """Stratified sampler of closed neighbourhoods in a :class:`SymbolicGraph`.

    Coordinates come from boundary strata (0, 1, 2, the coordinates of the
    two players and their successors, limit points below gamma) mixed with
    random CNF ordinals.  With probability ``adversarial`` a sample is
    re-drawn until it falls outside the cop's closed neighbourhood, which is
    where the interesting branches of a certificate live.
    """

    def __init__(self, adversarial: float = 0.75, tries: int = 6):
        self.adversarial = adversarial
        self.tries = tries

    def _anchors(self, G: SymbolicGraph, u: Vertex, v: Vertex) -> List[Ordinal]:
        out = [ZERO, ONE, ordinal(2)]
        for w in (u, v):
            if isinstance(w, Grid):
                out += [w.a, w.a + 1, w.b, w.b + 1]
        out += list(_limit_points(G.gamma))
        return out

    def _below(self, c: Ordinal, anchors, rng) -> Ordinal:
        if rng.random() < 0.5:
            pool = [a for a in anchors if a < c]
            if pool:
                return rng.choice(pool)
        return random_below(c, rng)

    def _above(self, c: Ordinal, G: SymbolicGraph, anchors, rng) -> Ordinal:
        if rng.random() < 0.5:
            pool = [a for a in anchors if c < a < G.gamma]
            if pool:
                return rng.choice(pool)
        return random_between(c, G.gamma, rng)

    def draw_one(self, G: SymbolicGraph, u: Vertex, v: Vertex, rng: random.Random) -> Vertex:
        if isinstance(u, Tail):
            opts = [u, _vertex_at_depth(u.i - 1)]
            if u.i < G.tail_vertices:
                opts.append(Tail(u.i + 1))
            return rng.choice(opts)
        anchors = self._anchors(G, u, v)
        regions = ["self"]
        if not u.a:
            regions.append("y-axis")
        if not u.b:
            regions.append("x-axis")
        if G.diagonal_edges and u.on_diagonal:
            regions += ["diagonal", "diagonal"]
        if u.a:
            regions += ["up-left", "up-left"]
        if u.b:
            regions += ["down-right", "down-right"]
        if u == ORIGIN and G.tail_n:
            regions.append("tail")
        region = rng.choice(regions)
        if region == "self":
            return u
        if region == "tail":
            return Tail(1)
        if region == "x-axis":
            return Grid(self._below(G.gamma, anchors, rng), ZERO)
        if region == "y-axis":
            return Grid(ZERO, self._below(G.gamma, anchors, rng))
        if region == "diagonal":
            d = self._below(G.gamma, anchors, rng)
            return Grid(d, d)
        if region == "up-left":
            return Grid(self._below(u.a, anchors, rng), self._above(u.b, G, anchors, rng))
        return Grid(self._above(u.a, G, anchors, rng), self._below(u.b, anchors, rng))

    def __call__(self, G: SymbolicGraph, u: Vertex, v: Vertex, rng: random.Random, k: int) -> List[Vertex]:
        out = []
        for _ in range(k):
            x = self.draw_one(G, u, v, rng)
            if rng.random() < self.adversarial:
                for _ in range(self.tries):
                    if not in_closed(G, x, v):
                        break
                    x = self.draw_one(G, u, v, rng)
            out.append(x)
        return out


# -- certificates ---------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    lemma: str
    u: Vertex
    v: Vertex
    rank: Ordinal

    def __str__(self):
        return f"{self.u} <=_{self.rank} {self.v} [{self.lemma}]"

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "u": str(self.u), "v": str(self.v), "rank": str(self.rank)}


@dataclass
class Step:
    challenge: Vertex
    reply: Vertex
    rank: Ordinal
    child: "CertNode"


@dataclass
class CertNode:
    claim: Claim
    kind: str = "descent"  # equality | domination | descent
    steps: List[Step] = field(default_factory=list)


@dataclass
class Certificate:
    root: CertNode
    samples: int
    total_steps: int
    max_depth: int

    passed = True

    def to_dict(self) -> dict:
        return {"claim": self.root.claim.to_dict(), "passed": True, "samples": self.samples,
                "total_steps": self.total_steps, "max_depth": self.max_depth}


@dataclass
class Violation:
    claim: Claim
    depth: int
    path: List[str]
    message: str
    total_steps: int = 0

    passed = False

    def to_dict(self) -> dict:
        return {"claim": self.claim.to_dict(), "passed": False, "depth": self.depth,
                "path": list(self.path), "message": self.message, "total_steps": self.total_steps}

    def __str__(self):
        return f"violation at depth {self.depth} of {self.claim}: {self.message}"


WitnessFn = Callable[[SymbolicGraph, str, Vertex, Vertex, Vertex], Witness]


def certify(G: SymbolicGraph, claim: Claim, sampler: Optional[Callable] = None, max_samples: int = 200,
            inner_samples: int = 1, rng: Optional[random.Random] = None, step_budget: int = 10 ** 6,
            witness_fn: WitnessFn = witness, record: bool = True) -> Union[Certificate, Violation]:
    """Audit ``claim`` by sampled, fully recursive witness descent.

    The root is challenged with ``max_samples`` robber moves, every deeper
    claim with ``inner_samples``.  Each reply must lie in the cop's closed
    neighbourhood and carry a strictly smaller rank; rank-0 claims must be
    equalities.  Descent ends by ordinal decrease; ``step_budget`` only
    guards against implementation bugs and is reported when hit.
    """
    sampler = sampler or NeighborhoodSampler()
    rng = rng or random.Random(0)
    root = CertNode(claim)
    stack = [(root, 0, [])]
    steps = 0
    max_depth = 0
    while stack:
        node, depth, path = stack.pop()
        c = node.claim
        max_depth = max(max_depth, depth)
        if c.rank == 0:
            if c.u != c.v:
                return Violation(claim, depth, path, f"rank-0 claim on distinct vertices {c.u}, {c.v}", steps)
            node.kind = "equality"
            continue
        if c.u == c.v:
            node.kind = "equality"
            continue
        if c.rank == 1:
            node.kind = "domination"
        k = max_samples if depth == 0 else inner_samples
        try:
            challenges = sampler(G, c.u, c.v, rng, k)
        except (ValueError, IndexError) as exc:
            return Violation(claim, depth, path, f"sampler failed: {exc}", steps)
        for x in challenges:
            steps += 1
            if steps > step_budget:
                return Violation(claim, depth, path, f"step budget {step_budget} exhausted", steps)
            here = path + [f"{c.lemma}:{c.u}|{c.v}->{x}"]
            if not (G.contains(x) and in_closed(G, x, c.u)):
                return Violation(claim, depth, here, f"sampled {x} outside N[{c.u}]", steps)
            try:
                w = witness_fn(G, c.lemma, c.u, c.v, x)
            except HypothesisViolation as exc:
                return Violation(claim, depth + 1, here, str(exc), steps)
            if not (G.contains(w.vertex) and in_closed(G, w.vertex, c.v)):
                return Violation(claim, depth + 1, here, f"reply {w.vertex} not in N[{c.v}]", steps)
            if not w.rank < c.rank:
                return Violation(claim, depth + 1, here, f"rank {w.rank} does not drop below {c.rank}", steps)
            if w.rank == 0 and w.vertex != x:
                return Violation(claim, depth + 1, here, f"rank 0 reply {w.vertex} misses {x}", steps)
            child = CertNode(Claim(w.lemma, x, w.vertex, w.rank))
            if record:
                node.steps.append(Step(x, w.vertex, w.rank, child))
            stack.append((child, depth + 1, here))
    return Certificate(root, max_samples, steps, max_depth)
