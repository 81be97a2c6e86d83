"""Cop and robber strategies on the symbolic grid graphs, and a game simulator.

The cop strategy walks to the diagonal, then sits on the axis just beyond
the robber so that every escape must lower the robber's smaller coordinate.
Robber strategies produce escapes that stay outside the cop's closed
neighbourhood while keeping the robber's smaller coordinate above a budget.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .ordinal import ONE, ZERO, Ordinal, OrdinalLike, format_ordinal, ordinal
from .symbolic import (
    ORIGIN,
    Grid,
    HypothesisViolation,
    NeighborhoodSampler,
    SymbolicGraph,
    Tail,
    Vertex,
    _tail_depth,
    _vertex_at_depth,
    eta_bounds,
    in_closed,
    least_diagonal_neighbor,
    toward_origin,
    vertex_key,
)

__all__ = [
    "PHASES",
    "RuleViolation",
    "cop_strategy",
    "robber_strategy",
    "escape_for",
    "PursuitCop",
    "GreedyBoundCop",
    "StayRobber",
    "RandomRobber",
    "BudgetedRobber",
    "PlayTrace",
    "simulate",
    "ROUND_CAP",
]

PHASES = ("to-diagonal", "x-axis-chase", "y-axis-chase", "tail-chase", "greedy", "captured")
CHASE_PHASES = ("x-axis-chase", "y-axis-chase")
ROUND_CAP = 10 ** 4


class RuleViolation(ValueError):
    """A policy produced a move that is neither a stay nor a step along an edge."""


# -- cop --------------------------------------------------------------------------

def _x_target(G: SymbolicGraph, cop: Grid, robber: Grid) -> Grid:
    y = Grid(robber.a + 1, ZERO)
    return y if in_closed(G, y, cop) else Grid(max(robber.a, cop.a) + 1, ZERO)


def _y_target(G: SymbolicGraph, cop: Grid, robber: Grid) -> Grid:
    y = Grid(ZERO, robber.b + 1)
    return y if in_closed(G, y, cop) else Grid(ZERO, max(robber.b, cop.b) + 1)


def _axis_target(G: SymbolicGraph, cop: Grid, robber: Grid) -> Tuple[Grid, str]:
    """Axis vertex beyond the robber, reachable from ``cop``."""
    if robber.b < robber.a or (robber.b == robber.a and not G.diagonal_edges):
        return _x_target(G, cop, robber), "x-axis-chase"
    return _y_target(G, cop, robber), "y-axis-chase"


def _head_to_diagonal(G: SymbolicGraph, cop: Vertex) -> Vertex:
    if isinstance(cop, Tail):
        return _vertex_at_depth(cop.i - 1)
    d = least_diagonal_neighbor(G, cop)
    # a cop at (p, q) with |p - q| = 1 sees no diagonal vertex yet
    return d if d is not None else Grid(ZERO, cop.b + 1)


def cop_strategy(G: SymbolicGraph, state: Tuple[Vertex, Vertex, str]) -> Tuple[Vertex, str]:
    """One move of the pursuit strategy: ``(cop, robber, phase) -> (move, phase')``."""
    cop, robber, phase = state
    G.check(cop, robber)
    if cop == robber or phase == "captured":
        raise ValueError("the robber is already captured")
    if in_closed(G, robber, cop):
        return robber, "captured"
    if isinstance(robber, Tail):
        # play as if the robber stood on the origin, then walk down the path
        depth = _tail_depth(cop)
        if depth is None:
            return toward_origin(G, cop), "tail-chase"
        step = 1 if robber.i > depth else -1
        return _vertex_at_depth(depth + step), "tail-chase"
    if isinstance(cop, Tail):
        return _vertex_at_depth(cop.i - 1), "to-diagonal"
    if G.diagonal_edges and (robber.on_diagonal or not (cop.on_diagonal or phase in CHASE_PHASES)):
        return _head_to_diagonal(G, cop), "to-diagonal"
    return _axis_target(G, cop, robber)


class PursuitCop:
    """Callable wrapper around :func:`cop_strategy`."""

    name = "pursuit"

    def __call__(self, G: SymbolicGraph, cop: Vertex, robber: Vertex, phase: str) -> Tuple[Vertex, str]:
        return cop_strategy(G, (cop, robber, phase))


class GreedyBoundCop:
    """Picks, among a finite candidate set in N[cop], the move with the smallest
    upper bound on the remaining capture time (ties: lower bound, then vertex order)."""

    name = "greedy"

    def candidates(self, G: SymbolicGraph, cop: Vertex, robber: Vertex) -> List[Vertex]:
        out = [cop]
        if isinstance(cop, Tail):
            out.append(_vertex_at_depth(cop.i - 1))
            if cop.i < G.tail_vertices:
                out.append(Tail(cop.i + 1))
            return out
        if in_closed(G, ORIGIN, cop):
            out.append(ORIGIN)
            if G.tail_n and cop == ORIGIN:
                out.append(Tail(1))
        out.append(toward_origin(G, cop))
        d = least_diagonal_neighbor(G, cop)
        if d is not None and G.diagonal_edges:
            out.append(d)
        if isinstance(robber, Grid):
            out += [_x_target(G, cop, robber), _y_target(G, cop, robber)]
        return [y for y in out if in_closed(G, y, cop)]

    def __call__(self, G: SymbolicGraph, cop: Vertex, robber: Vertex, phase: str) -> Tuple[Vertex, str]:
        if in_closed(G, robber, cop):
            return robber, "captured"

        def score(y):
            b = eta_bounds(G, robber, y)
            return (b.upper, b.lower, vertex_key(y))

        return min(self.candidates(G, cop, robber), key=score), "greedy"


# -- robber -----------------------------------------------------------------------

def _lower_escape(mu: Ordinal, u: Grid, v: Grid) -> Grid:
    """Escape keeping the smaller coordinate at least ``mu`` (needs mu < min(u))."""
    alpha, beta, xi, delta = u.a, u.b, v.a, v.b
    if xi > alpha or delta < beta:
        if xi > alpha and delta >= beta:
            return Grid(xi, mu)
        b_mu = max(mu, delta)
        if not delta and not mu:
            b_mu = ONE
        return Grid(max(alpha, xi, mu, delta) + 1, b_mu)
    if xi == alpha:
        return Grid(mu, delta)
    a_mu = max(mu, xi)
    if not xi and not mu:
        a_mu = ONE
    return Grid(a_mu, max(delta, mu, xi) + 1)


def escape_for(G: SymbolicGraph, mu: OrdinalLike, u: Vertex, v: Vertex) -> Tuple[Vertex, str]:
    """Escape vertex and the name of the lower-bound argument that produced it."""
    mu = ordinal(mu)
    G.check(u, v)
    if u == v:
        raise HypothesisViolation(f"robber and cop share {u}")
    if isinstance(u, Tail):
        dv = _tail_depth(v)
        if dv is not None and dv > u.i:
            return _vertex_at_depth(u.i - 1), "tail-lower"
        raise HypothesisViolation(f"no escape argument for tail robber {u} against {v}")
    if u == ORIGIN and isinstance(v, Tail):
        d = max(mu, ONE)
        return Grid(d, d), "tail-lower"
    if G.diagonal_edges and u.on_diagonal and not (isinstance(v, Grid) and v.on_diagonal):
        # least diagonal vertex above mu outside N[v]
        d = mu + 1
        while in_closed(G, Grid(d, d), v):
            d = max(d + 1, v.a, v.b)
        return Grid(d, d), "diagonal-lower"
    if mu >= min(u.a, u.b):
        raise HypothesisViolation(f"budget {mu} is not below min coordinate of {u}")
    if isinstance(v, Tail):
        return u, "min-coordinate"
    if min(u.a, u.b) < 2:
        raise HypothesisViolation(f"{u} has a coordinate below 2")
    return _lower_escape(mu, u, v), "min-coordinate"


def robber_strategy(G: SymbolicGraph, mu: OrdinalLike, state: Tuple[Vertex, Vertex]) -> Vertex:
    """Escape for robber ``u`` against cop ``v`` with budget ``mu``; asserts u_mu in N[u] minus N[v]."""
    u, v = state
    x, _ = escape_for(G, mu, u, v)
    if not in_closed(G, x, u):
        raise AssertionError(f"escape {x} is not a move from {u}")
    if in_closed(G, x, v):
        raise AssertionError(f"escape {x} lands in N[{v}]")
    return x


class StayRobber:
    name = "stay"

    def __call__(self, G, robber, cop, rng, turn):
        return robber


class RandomRobber:
    """Random moves drawn by the stratified sampler, mostly avoiding N[cop]."""

    name = "random"

    def __init__(self, adversarial: float = 0.9):
        self.sampler = NeighborhoodSampler(adversarial=adversarial)

    def __call__(self, G, robber, cop, rng, turn):
        return self.sampler(G, robber, cop, rng, 1)[0]


class BudgetedRobber:
    """Escapes with budget ``k - turn + 1`` on its ``turn``-th move (1-based).

    From a start whose smaller coordinate is at least ``k + 1`` the first
    ``k`` escapes are guaranteed; afterwards it keeps escaping with budget 0
    when it can and stays put otherwise.
    """

    name = "budgeted"

    def __init__(self, k: int):
        self.k = k

    def __call__(self, G, robber, cop, rng, turn):
        mu = max(self.k - turn + 1, 0)
        try:
            return robber_strategy(G, mu, (robber, cop))
        except HypothesisViolation:
            if turn <= self.k:
                raise
            return robber


# -- simulation -------------------------------------------------------------------

@dataclass
class PlayTrace:
    rounds: List[Tuple[Vertex, Vertex]] = field(default_factory=list)
    phases: List[str] = field(default_factory=list)
    chase_values: List[Tuple[int, str, Ordinal]] = field(default_factory=list)
    captured: bool = False
    cop_moves: int = 0
    violation: Optional[str] = None

    def chase_monotone(self) -> bool:
        """Within each uninterrupted chase, the chased coordinate strictly decreases."""
        for (r0, p0, v0), (r1, p1, v1) in zip(self.chase_values, self.chase_values[1:]):
            if r1 == r0 + 1 and p1 == p0 and not v1 < v0:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "captured": self.captured,
            "cop_moves": self.cop_moves,
            "violation": self.violation,
            "rounds": [{"robber": str(r), "cop": str(c), "phase": p}
                       for (r, c), p in zip(self.rounds, self.phases)],
            "chase_values": [[r, p, format_ordinal(v)] for r, p, v in self.chase_values],
        }


def simulate(G: SymbolicGraph, cop_policy, robber_policy, start: Tuple[Vertex, Vertex],
             max_rounds: int = ROUND_CAP, rng: Optional[random.Random] = None,
             first: str = "cop") -> PlayTrace:
    """Play until capture or ``max_rounds``.  ``first`` picks who moves first in each round.

    Rule violations end the game and are recorded in ``trace.violation``.
    """
    cop, robber = start
    G.check(cop, robber)
    if cop == robber:
        raise ValueError("cop and robber must start on distinct vertices")
    if first not in ("cop", "robber"):
        raise ValueError("first must be 'cop' or 'robber'")
    rng = rng or random.Random(0)
    trace = PlayTrace()
    phase = "to-diagonal"
    robber_turn = 0

    def robber_move():
        nonlocal robber, robber_turn
        robber_turn += 1
        x = robber_policy(G, robber, cop, rng, robber_turn)
        if not (G.contains(x) and in_closed(G, x, robber)):
            raise RuleViolation(f"robber move {robber} -> {x} is not legal")
        robber = x

    def cop_move(r):
        nonlocal cop, phase
        y, phase = cop_policy(G, cop, robber, phase)
        if not (G.contains(y) and in_closed(G, y, cop)):
            raise RuleViolation(f"cop move {cop} -> {y} is not legal")
        if phase in CHASE_PHASES:
            chased = robber.b if phase == "x-axis-chase" else robber.a
            trace.chase_values.append((r, phase, chased))
        cop = y
        trace.cop_moves += 1

    try:
        for r in range(max_rounds):
            if first == "robber":
                robber_move()
                if robber == cop:
                    phase = "captured"
                else:
                    cop_move(r)
            else:
                cop_move(r)
                if cop != robber:
                    robber_move()
            if cop == robber:
                phase = "captured"
            trace.rounds.append((robber, cop))
            trace.phases.append(phase)
            if phase == "captured":
                trace.captured = True
                break
    except (RuleViolation, AssertionError, HypothesisViolation) as exc:
        trace.violation = str(exc)
    return trace
