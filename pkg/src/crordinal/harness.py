"""Verification suites and the consolidated report.

Each suite is a list of named checks.  A check counts passes, failures and
flags, keeps a few failing payloads, and names the mathematical claims it
exercises.  The report maps every claim id to the status of the checks that
touched it.  Everything except the ``environment`` section is a pure function
of the configuration.
"""
from __future__ import annotations

import hashlib
import json
import os
import platform
import random
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .finite import ROBBER_WINS, dismantle, eta_all, naive_table, recursion_violations
from .generators import (
    TruncationSpec,
    generate_complete,
    generate_cycle,
    generate_path,
    generate_random,
    generate_truncation,
    truncation_vertices,
)
from .ordinal import ONE, OMEGA, ZERO, Ordinal, format_ordinal, parse, random_below, random_between
from .strategies import (
    ROUND_CAP,
    BudgetedRobber,
    GreedyBoundCop,
    PursuitCop,
    RandomRobber,
    robber_strategy,
    simulate,
)
from .symbolic import (
    ORIGIN,
    Claim,
    Grid,
    HypothesisViolation,
    SymbolicGraph,
    Tail,
    Witness,
    certify,
    claim_rank,
    eta_bounds,
    rho,
    witness,
)

__all__ = [
    "SUITES",
    "CLAIMS",
    "FAMILIES",
    "SuiteConfig",
    "ConfigError",
    "Report",
    "run_suite",
    "run_suites",
    "emit_report",
    "load_report",
    "sample_claim",
]

SUITES = ("finite-oracle", "nw-equivalence", "paths", "truncation", "lemma-certificates",
          "simulation", "survival", "section4-variant")

# claim id -> statement, in the order the argument develops
CLAIMS = {
    "path-capture-time": "the path on 2n+1 vertices has capture time n",
    "dismantlable-cop-win": "a finite graph is cop-win iff it is dismantlable",
    "capture-recursion": "finite capture times satisfy the one-round recursion",
    "cop-win": "the grid graph is cop-win via the diagonal-then-axis pursuit",
    "x-axis-chase": "u=(a,b), v=(c,0), b<a<c: u <=_b v (<=_1 if b=0)",
    "y-axis-chase": "mirror image of the x-axis chase",
    "diagonal-pair": "two diagonal vertices: u <=_a v for a>1, <=_2 otherwise",
    "grid-upper": "every capture time in the grid graph is at most gamma",
    "min-coordinate-lower": "distinct u=(a,b), v: capture time at least min(a,b)",
    "diagonal-lower": "diagonal u, off-diagonal v: capture time exactly gamma",
    "rho-limit": "maximum capture time of the grid graph is gamma",
    "tail-cop-win": "the grid graph with a tail is cop-win",
    "tail-diagonal-pair": "with a tail: diagonal pairs <=_a for a>1, <=_(n+2) otherwise",
    "tail-grid-upper": "with a tail: cop on the grid gives at most gamma+1, cop at origin below gamma",
    "tail-cop-upper": "cop at tail vertex T(i) gives at most gamma+(i-1)",
    "tail-upper": "with a tail every capture time is at most gamma+n",
    "tail-min-coordinate-lower": "with a tail: grid robber (a,b) needs at least min(a,b)",
    "tail-lower": "T(i) against deeper T(j) needs at least gamma+i; T(n) vs T(n+1) exactly gamma+n",
    "rho-successor": "maximum capture time with a tail of length n is gamma+n",
    "variant-cop-win": "without diagonal edges the graph is still cop-win",
    "variant-axis-chase": "without diagonal edges the axis chases hold, extended to diagonal robbers",
    "variant-min-coordinate-lower": "without diagonal edges the min(a,b) lower bound holds",
    "variant-rho": "without diagonal edges the maximum capture time is still gamma",
}

# audit family -> (claim id, needs a tail)
FAMILIES = {
    "x-axis-chase": ("x-axis-chase", False),
    "y-axis-chase": ("y-axis-chase", False),
    "diagonal-pair": ("diagonal-pair", False),
    "grid-upper": ("grid-upper", False),
    "tail-diagonal-pair": ("tail-diagonal-pair", True),
    "tail-grid-upper": ("tail-grid-upper", True),
    "tail-cop-upper": ("tail-cop-upper", True),
}
VARIANT_FAMILIES = ("x-axis-chase", "y-axis-chase")

MAX_PAYLOADS = 10


class ConfigError(ValueError):
    pass


def _ordinal_list(text: str) -> List[Ordinal]:
    return [parse(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> List[int]:
    return [int(t) for t in text.split(",") if t.strip()]


@dataclass
class SuiteConfig:
    seed: int = 0
    gammas: List[Ordinal] = field(default_factory=lambda: [parse(g) for g in ("w", "w*2", "w^2", "w^w")])
    tail_lengths: List[int] = field(default_factory=lambda: [1, 2, 3])
    truncation_sizes: List[int] = field(default_factory=lambda: [4, 6, 8])
    samples_per_claim: int = 1000
    survival_budget_max: int = 20
    corpus_size: int = 200
    corpus_max_vertices: int = 8
    claims_per_family: int = 20
    exactness_pairs: int = 50
    simulation_robbers: int = 500
    survival_starts: int = 100
    workers: int = 1

    _PARSERS = {
        "seed": int, "gammas": _ordinal_list, "tail_lengths": _int_list, "truncation_sizes": _int_list,
        "samples_per_claim": int, "survival_budget_max": int, "corpus_size": int,
        "corpus_max_vertices": int, "claims_per_family": int, "exactness_pairs": int,
        "simulation_robbers": int, "survival_starts": int, "workers": int,
    }

    def __post_init__(self):
        self.gammas = [parse(g) if isinstance(g, str) else g for g in self.gammas]
        self.validate()

    def validate(self) -> None:
        for g in self.gammas:
            if not (g.is_limit() and g >= OMEGA):
                raise ConfigError(f"gamma {g} is not an infinite limit ordinal")
        if any(n < 1 for n in self.tail_lengths):
            raise ConfigError("tail lengths must be positive")
        if any(n < 2 for n in self.truncation_sizes):
            raise ConfigError("truncation sizes must be at least 2")
        for name in ("samples_per_claim", "claims_per_family", "corpus_size", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.samples_per_claim < self.claims_per_family:
            raise ConfigError("samples_per_claim must be at least claims_per_family")
        if not 1 <= self.corpus_max_vertices <= 12:
            raise ConfigError("corpus_max_vertices must lie in 1..12")

    @classmethod
    def from_text(cls, text: str) -> "SuiteConfig":
        kwargs = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in cls._PARSERS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            try:
                kwargs[key] = cls._PARSERS[key](value)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path) -> "SuiteConfig":
        return cls.from_text(Path(path).read_text())

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self._PARSERS}
        d["gammas"] = [format_ordinal(g) for g in self.gammas]
        del d["workers"]
        return d


def _subseed(seed: int, *parts) -> int:
    h = hashlib.sha256(":".join(map(str, (seed,) + parts)).encode()).hexdigest()
    return int(h[:12], 16)


class _Check:
    def __init__(self, name: str, claims: Sequence[str]):
        self.name = name
        self.claims = list(claims)
        self.passed = self.failed = self.flagged = 0
        self.failures: List = []
        self.flags: List = []
        self.note = ""

    def ok(self, n: int = 1):
        self.passed += n

    def fail(self, payload):
        self.failed += 1
        if len(self.failures) < MAX_PAYLOADS:
            self.failures.append(payload)

    def flag(self, payload):
        self.flagged += 1
        if len(self.flags) < MAX_PAYLOADS:
            self.flags.append(payload)

    def check(self, cond: bool, payload):
        if cond:
            self.ok()
        else:
            self.fail(payload)

    def to_dict(self) -> dict:
        return {"name": self.name, "claims": self.claims, "status": "fail" if self.failed else "pass",
                "passed": self.passed, "failed": self.failed, "flagged": self.flagged,
                "failures": self.failures, "flags": self.flags, "note": self.note}


# -- finite suites ----------------------------------------------------------------

def _corpus(config: SuiteConfig):
    rng = random.Random(_subseed(config.seed, "corpus"))
    out = []
    for _ in range(config.corpus_size):
        k = rng.randint(1, config.corpus_max_vertices)
        p = rng.choice((0.2, 0.35, 0.5, 0.65, 0.8))
        out.append(generate_random(k, p, rng.randrange(2 ** 31)))
    return out


def _suite_finite_oracle(config: SuiteConfig) -> List[_Check]:
    eq = _Check("eta-all-vs-naive", ["capture-recursion"])
    rec = _Check("recursion-identity-corpus", ["capture-recursion"])
    for gi, G in enumerate(_corpus(config)):
        table = eta_all(G)
        naive = naive_table(G)
        diff = (table.values != naive).nonzero()
        if len(diff[0]):
            u, v = int(diff[0][0]), int(diff[1][0])
            eq.fail({"graph": gi, "edges": G.edges(), "u": u, "v": v,
                     "eta_all": int(table.values[u, v]), "naive": int(naive[u, v])})
        else:
            eq.ok(table.values.size)
        bad = recursion_violations(G, table)
        if bad:
            u, v, stored, expect = bad[0]
            rec.fail({"graph": gi, "u": u, "v": v, "stored": stored, "recomputed": expect})
        else:
            rec.ok()
    return [eq, rec]


def _suite_nw(config: SuiteConfig) -> List[_Check]:
    c = _Check("cop-win-iff-dismantlable", ["dismantlable-cop-win"])
    graphs = [(f"random[{i}]", G) for i, G in enumerate(_corpus(config))]
    graphs += [(f"C_{k}", generate_cycle(k)) for k in range(3, 9)]
    graphs += [(f"K_{k}", generate_complete(k)) for k in range(1, 7)]
    for name, G in graphs:
        cop_win = eta_all(G).cop_win
        dis = dismantle(G) is not None
        c.check(cop_win == dis, {"graph": name, "edges": G.edges(), "cop_win": cop_win, "dismantlable": dis})
    return [c]


def _suite_paths(config: SuiteConfig) -> List[_Check]:
    c = _Check("path-capture-time", ["path-capture-time"])
    for n in range(1, 11):
        t = eta_all(generate_path(2 * n + 1)).capture_time
        c.check(t == n, {"n": n, "capture_time": t})
    return [c]


def _suite_truncation(config: SuiteConfig) -> List[_Check]:
    rec = _Check("recursion-identity-truncations", ["capture-recursion"])
    win = _Check("truncation-cop-win", [])
    heur = _Check("truncation-min-coordinate", [])
    win.note = "the infinite-graph claims say nothing about truncations; robber-win ones are flagged"
    heur.note = "finite grid pairs whose capture time is below min(a,b) are flagged"
    for N in config.truncation_sizes:
        for diag in (True, False):
            for tail in (0, 2):
                spec = TruncationSpec(N, tail, diag)
                G = generate_truncation(spec)
                table = eta_all(G)
                tag = {"N": N, "tail": tail, "diagonal_edges": diag}
                bad = recursion_violations(G, table)
                if bad:
                    u, v, stored, expect = bad[0]
                    rec.fail({**tag, "u": G.labels[u], "v": G.labels[v], "stored": stored, "recomputed": expect,
                              "count": len(bad)})
                else:
                    rec.ok()
                if table.cop_win:
                    win.ok()
                else:
                    win.flag({**tag, "robber_wins": True})
                verts = truncation_vertices(spec)
                below = 0
                for u, (a, b) in enumerate(verts):
                    if a < 0:
                        continue
                    for v in range(len(verts)):
                        val = int(table.values[u, v])
                        if u != v and val != ROBBER_WINS and val < min(a, b):
                            below += 1
                if below:
                    heur.flag({**tag, "pairs_below_min": below})
                else:
                    heur.ok()
    return [rec, win, heur]


# -- symbolic sampling ------------------------------------------------------------

def _coord(G: SymbolicGraph, rng: random.Random) -> Ordinal:
    r = rng.random()
    if r < 0.15:
        return Ordinal() if r < 0.05 else (ONE if r < 0.1 else parse("2"))
    return random_below(G.gamma, rng)


def _above(low: Ordinal, G: SymbolicGraph, rng: random.Random) -> Ordinal:
    return random_between(low, G.gamma, rng)


def _random_grid(G: SymbolicGraph, rng: random.Random, near_diagonal: float = 0.15) -> Grid:
    a = _coord(G, rng)
    r = rng.random()
    if r < near_diagonal:
        # (c, c+1) and (c+1, c) see no diagonal vertex
        return Grid(a, a + 1) if r < near_diagonal / 2 else Grid(a + 1, a)
    if r < near_diagonal + 0.2:
        return Grid(a, a)
    return Grid(a, _coord(G, rng))


def _random_vertex(G: SymbolicGraph, rng: random.Random):
    if G.tail_n and rng.random() < 0.3:
        return Tail(rng.randint(1, G.tail_vertices))
    return _random_grid(G, rng)


def sample_claim(G: SymbolicGraph, family: str, rng: random.Random) -> Claim:
    """A hypothesis-satisfying claim of the given audit family."""
    if family in ("x-axis-chase", "y-axis-chase"):
        r = rng.random()
        beta = ZERO if r < 0.15 else ONE if r < 0.3 else _coord(G, rng)
        if not G.diagonal_edges and rng.random() < 0.25:
            alpha = beta
        else:
            alpha = _above(beta, G, rng)
        xi = _above(alpha, G, rng)
        u, v = Grid(alpha, beta), Grid(xi, ZERO)
        lemma = "x-axis"
        if family == "y-axis-chase":
            u, v, lemma = u.swap(), v.swap(), "y-axis"
    elif family in ("diagonal-pair", "tail-diagonal-pair"):
        small = family == "tail-diagonal-pair" and rng.random() < 0.5
        a = ZERO if small and rng.random() < 0.5 else ONE if small else _coord(G, rng)
        b = _coord(G, rng)
        while b == a:
            b = _coord(G, rng)
        u, v, lemma = Grid(a, a), Grid(b, b), "diagonal"
    elif family == "grid-upper":
        u, v = _random_grid(G, rng), _random_grid(G, rng)
        while u == v:
            v = _random_grid(G, rng)
        lemma = "grid-upper"
    elif family == "tail-grid-upper":
        if rng.random() < 0.5:
            u = _random_grid(G, rng)
            while u == ORIGIN:
                u = _random_grid(G, rng)
            v, lemma = ORIGIN, "origin-cop"
        else:
            u, v = _random_vertex(G, rng), _random_grid(G, rng)
            while u == v:
                v = _random_grid(G, rng)
            lemma = "grid-upper-tail"
    elif family == "tail-cop-upper":
        v = Tail(rng.randint(1, G.tail_vertices))
        u = _random_vertex(G, rng)
        while u == v:
            u = _random_vertex(G, rng)
        lemma = "tail-cop"
    else:
        raise ValueError(f"unknown audit family {family!r}")
    return Claim(lemma, u, v, claim_rank(G, lemma, u, v))


def _audit(G: SymbolicGraph, family: str, config: SuiteConfig, seed: int, check: _Check) -> None:
    rng = random.Random(seed)
    per_claim = config.samples_per_claim // config.claims_per_family
    for i in range(config.claims_per_family):
        claim = sample_claim(G, family, rng)
        k = per_claim + (1 if i < config.samples_per_claim % config.claims_per_family else 0)
        res = certify(G, claim, max_samples=k, rng=random.Random(rng.randrange(2 ** 63)), record=False)
        if res.passed:
            check.ok(k)
        else:
            check.fail({"graph": str(G), **res.to_dict()})


def _graphs_for(config: SuiteConfig, needs_tail: bool, diagonal: bool = True):
    for g in config.gammas:
        if needs_tail:
            for n in config.tail_lengths:
                yield SymbolicGraph(g, n, diagonal)
        else:
            yield SymbolicGraph(g, 0, diagonal)


def _family_checks(config: SuiteConfig, families, diagonal: bool, prefix: str) -> List[_Check]:
    out = []
    for fam in families:
        claim, needs_tail = FAMILIES[fam]
        if not diagonal:
            claim = "variant-axis-chase"
        for g in config.gammas:
            c = _Check(f"{prefix}audit:{fam}:{format_ordinal(g)}", [claim])
            graphs = [SymbolicGraph(g, n, diagonal) for n in config.tail_lengths] if needs_tail \
                else [SymbolicGraph(g, 0, diagonal)]
            # split the audit budget across tail lengths
            for gi, G in enumerate(graphs):
                sub = SuiteConfig(**{**_config_kwargs(config),
                                     "samples_per_claim": max(config.samples_per_claim // len(graphs),
                                                              config.claims_per_family)})
                _audit(G, fam, sub, _subseed(config.seed, prefix, fam, str(G), gi), c)
            out.append(c)
    return out


def _config_kwargs(config: SuiteConfig) -> dict:
    return {k: getattr(config, k) for k in SuiteConfig._PARSERS}


def _mutation_check(config: SuiteConfig) -> _Check:
    c = _Check("mutation:rank-not-decreased", [])
    c.note = "a witness that keeps the parent rank must be rejected at depth 1"

    def corrupted(G, lemma, u, v, x):
        w = witness(G, lemma, u, v, x)
        return Witness(w.vertex, claim_rank(G, lemma, u, v), w.lemma)

    rng = random.Random(_subseed(config.seed, "mutation"))
    for g in config.gammas:
        for fam, (_, needs_tail) in FAMILIES.items():
            G = SymbolicGraph(g, config.tail_lengths[0] if needs_tail else 0)
            claim = sample_claim(G, fam, rng)
            while claim.rank <= 1:
                claim = sample_claim(G, fam, rng)
            res = certify(G, claim, max_samples=50, rng=random.Random(rng.randrange(2 ** 63)),
                          witness_fn=corrupted, record=False)
            caught = not res.passed and res.depth == 1
            c.check(caught, {"graph": str(G), "family": fam, "claim": claim.to_dict(),
                             "result": res.to_dict()})
    return c


def _exactness_checks(config: SuiteConfig) -> List[_Check]:
    diag = _Check("exact:diagonal-vs-off-diagonal", ["diagonal-lower"])
    rl = _Check("rho:no-tail", ["rho-limit"])
    tl = _Check("exact:tail-pair", ["tail-lower"])
    rs = _Check("rho:tail", ["rho-successor"])
    rng = random.Random(_subseed(config.seed, "exactness"))
    for g in config.gammas:
        G = SymbolicGraph(g)
        for _ in range(config.exactness_pairs):
            a = _coord(G, rng)
            v = _random_grid(G, rng)
            while v.on_diagonal:
                v = _random_grid(G, rng)
            b = eta_bounds(G, Grid(a, a), v)
            diag.check(b.exact and b.lower == g, {"gamma": str(g), "u": str(Grid(a, a)), "v": str(v),
                                                  "bound": b.to_dict(), "expected": str(g)})
        r = rho(G)
        rl.check(r == g, {"gamma": str(g), "rho": str(r), "expected": str(g)})
        for n in config.tail_lengths:
            H = SymbolicGraph(g, n)
            b = eta_bounds(H, Tail(n), Tail(n + 1))
            tl.check(b.exact and b.lower == g + n, {"graph": str(H), "bound": b.to_dict(), "expected": str(g + n)})
            r = rho(H)
            rs.check(r == g + n, {"graph": str(H), "rho": str(r), "expected": str(g + n)})
    return [diag, rl, tl, rs]


def _bound_sanity_check(config: SuiteConfig) -> _Check:
    c = _Check("bounds:sanity", ["min-coordinate-lower", "tail-min-coordinate-lower", "tail-upper"])
    rng = random.Random(_subseed(config.seed, "bounds"))
    for g in config.gammas:
        for n in [0] + list(config.tail_lengths):
            G = SymbolicGraph(g, n)
            cap = rho(G)
            for _ in range(200):
                u, v = _random_vertex(G, rng), _random_vertex(G, rng)
                try:
                    b = eta_bounds(G, u, v)
                except AssertionError as exc:
                    c.fail({"graph": str(G), "u": str(u), "v": str(v), "error": str(exc)})
                    continue
                ok = b.upper <= cap and (u != v or b.exact)
                if isinstance(u, Grid) and u != v:
                    ok = ok and b.lower >= min(u.a, u.b)
                c.check(ok, {"graph": str(G), "u": str(u), "v": str(v), "bound": b.to_dict()})
    return c


def _escape_check(config: SuiteConfig, diagonal: bool) -> _Check:
    claims = ["min-coordinate-lower", "diagonal-lower", "tail-lower", "tail-min-coordinate-lower"] \
        if diagonal else ["variant-min-coordinate-lower"]
    c = _Check("escapes:valid" if diagonal else "variant:escapes:valid", claims)
    rng = random.Random(_subseed(config.seed, "escapes", diagonal))
    tails = [0] + (list(config.tail_lengths) if diagonal else [])
    for g in config.gammas:
        for n in tails:
            G = SymbolicGraph(g, n, diagonal)
            for _ in range(200):
                u, v = _random_vertex(G, rng), _random_vertex(G, rng)
                if u == v:
                    continue
                if isinstance(u, Tail):
                    if not (isinstance(v, Tail) and v.i > u.i):
                        continue
                    mu = ZERO
                elif diagonal and u.on_diagonal and not (isinstance(v, Grid) and v.on_diagonal):
                    mu = _coord(G, rng)
                else:
                    m = min(u.a, u.b)
                    if m < 2:
                        continue
                    mu = random_below(m, rng)
                try:
                    robber_strategy(G, mu, (u, v))
                    c.ok()
                except (HypothesisViolation, AssertionError) as exc:
                    c.fail({"graph": str(G), "u": str(u), "v": str(v), "mu": str(mu), "error": str(exc)})
    return c


def _suite_certificates(config: SuiteConfig) -> List[_Check]:
    checks = _family_checks(config, FAMILIES, True, "")
    checks += _exactness_checks(config)
    checks.append(_bound_sanity_check(config))
    checks.append(_escape_check(config, True))
    checks.append(_mutation_check(config))
    return checks


# -- play -------------------------------------------------------------------------

def _simulation_check(config: SuiteConfig, G: SymbolicGraph, robbers: int, name: str, claims) -> _Check:
    c = _Check(name, claims)
    rng = random.Random(_subseed(config.seed, name))
    robber = RandomRobber()
    for _ in range(robbers):
        cop, rob = _random_vertex(G, rng), _random_vertex(G, rng)
        while rob == cop:
            rob = _random_vertex(G, rng)
        t = simulate(G, PursuitCop(), robber, (cop, rob), max_rounds=ROUND_CAP,
                     rng=random.Random(rng.randrange(2 ** 63)))
        good = t.captured and t.violation is None and t.chase_monotone()
        c.check(good, {"graph": str(G), "cop": str(cop), "robber": str(rob), "captured": t.captured,
                       "violation": t.violation, "monotone": t.chase_monotone(), "rounds": len(t.rounds)})
    return c


def _suite_simulation(config: SuiteConfig, diagonal: bool = True) -> List[_Check]:
    out = []
    prefix = "" if diagonal else "variant:"
    claim = "cop-win" if diagonal else "variant-cop-win"
    for g in config.gammas:
        G = SymbolicGraph(g, 0, diagonal)
        out.append(_simulation_check(config, G, config.simulation_robbers, f"{prefix}simulate:{format_ordinal(g)}",
                                     [claim]))
        if diagonal:
            for n in config.tail_lengths:
                H = SymbolicGraph(g, n)
                out.append(_simulation_check(config, H, max(config.simulation_robbers // 5, 1),
                                             f"simulate:{H}", ["tail-cop-win"]))
    return out


def _suite_survival(config: SuiteConfig) -> List[_Check]:
    out = []
    for cop in (PursuitCop(), GreedyBoundCop()):
        c = _Check(f"survival:{cop.name}", ["min-coordinate-lower"])
        rng = random.Random(_subseed(config.seed, "survival", cop.name))
        for k in range(1, config.survival_budget_max + 1):
            for i in range(config.survival_starts):
                G = SymbolicGraph(config.gammas[i % len(config.gammas)])
                a, b = (x if x >= k + 1 else x + (k + 1) for x in (_coord(G, rng), _coord(G, rng)))
                rob = Grid(a, b)
                cop_start = _random_grid(G, rng)
                while cop_start == rob:
                    cop_start = _random_grid(G, rng)
                t = simulate(G, cop, BudgetedRobber(k), (cop_start, rob), max_rounds=k + 1,
                             rng=random.Random(0), first="robber")
                survived = t.cop_moves - (1 if t.captured else 0)
                c.check(t.violation is None and survived >= k,
                        {"graph": str(G), "k": k, "cop": str(cop_start), "robber": str(rob),
                         "survived": survived, "violation": t.violation})
        out.append(c)
    return out


def _suite_variant(config: SuiteConfig) -> List[_Check]:
    r = _Check("variant:rho", ["variant-rho"])
    for g in config.gammas:
        val = rho(SymbolicGraph(g, 0, False))
        r.check(val == g, {"gamma": str(g), "rho": str(val)})
    checks = [r]
    checks += _family_checks(config, VARIANT_FAMILIES, False, "variant:")
    checks += _suite_simulation(config, diagonal=False)
    checks.append(_escape_check(config, False))
    return checks


_RUNNERS: Dict[str, Callable[[SuiteConfig], List[_Check]]] = {
    "finite-oracle": _suite_finite_oracle,
    "nw-equivalence": _suite_nw,
    "paths": _suite_paths,
    "truncation": _suite_truncation,
    "lemma-certificates": _suite_certificates,
    "simulation": _suite_simulation,
    "survival": _suite_survival,
    "section4-variant": _suite_variant,
}


# -- report -----------------------------------------------------------------------

@dataclass
class Report:
    seed: int
    config: dict
    suites: Dict[str, dict]
    coverage: Dict[str, dict]
    exit_code: int
    environment: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.exit_code == 0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(**data)

    def deterministic_part(self) -> dict:
        d = self.to_dict()
        d.pop("environment")
        return d


def _run_one(name: str, config: SuiteConfig) -> Tuple[str, dict, float]:
    t0 = time.perf_counter()
    checks = _RUNNERS[name](config)
    result = {
        "status": "fail" if any(c.failed for c in checks) else "pass",
        "passed": sum(c.passed for c in checks),
        "failed": sum(c.failed for c in checks),
        "flagged": sum(c.flagged for c in checks),
        "checks": [c.to_dict() for c in checks],
    }
    return name, result, time.perf_counter() - t0


def _coverage(suites: Dict[str, dict]) -> Dict[str, dict]:
    cov = {cid: {"statement": text, "status": "unaudited", "checks": []} for cid, text in CLAIMS.items()}
    for sname, res in suites.items():
        for chk in res["checks"]:
            for cid in chk["claims"]:
                entry = cov.setdefault(cid, {"statement": "", "status": "unaudited", "checks": []})
                entry["checks"].append(f"{sname}/{chk['name']}")
                if chk["status"] == "fail":
                    entry["status"] = "fail"
                elif entry["status"] == "unaudited":
                    entry["status"] = "pass"
    return cov


def run_suites(names: Sequence[str], config: SuiteConfig, workers: Optional[int] = None) -> Report:
    """Run the named suites (``all`` expands to every suite) and assemble a report."""
    config.validate()
    expanded: List[str] = []
    for n in names:
        if n == "all":
            expanded += [s for s in SUITES if s not in expanded]
        elif n in _RUNNERS:
            if n not in expanded:
                expanded.append(n)
        else:
            raise KeyError(f"unknown suite {n!r}; choose from {', '.join(SUITES + ('all',))}")
    workers = workers or config.workers
    if workers > 1 and len(expanded) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, expanded, [config] * len(expanded)))
    else:
        results = [_run_one(n, config) for n in expanded]
    suites = {name: res for name, res, _ in results}
    coverage = _coverage(suites)
    if "all" in names:
        missing = [cid for cid in CLAIMS if coverage[cid]["status"] == "unaudited"]
        suites["coverage"] = {
            "status": "fail" if missing else "pass", "passed": len(CLAIMS) - len(missing),
            "failed": len(missing), "flagged": 0,
            "checks": [{"name": "coverage:every-claim-audited", "claims": [], "status": "fail" if missing else "pass",
                        "passed": len(CLAIMS) - len(missing), "failed": len(missing), "flagged": 0,
                        "failures": missing, "flags": [], "note": ""}],
        }
    exit_code = 1 if any(s["status"] == "fail" for s in suites.values()) else 0
    env = {
        "python": sys.version.split()[0],
        "platform": platform.platform(),
        "timing_seconds": {name: round(t, 3) for name, _, t in results},
    }
    return Report(config.seed, config.to_dict(), suites, coverage, exit_code, env)


def run_suite(name: str, config: Optional[SuiteConfig] = None) -> Report:
    return run_suites([name], config or SuiteConfig())


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_table(report: Report) -> str:
    lines = [f"seed {report.seed}  exit code {report.exit_code}", ""]
    lines.append(f"{'suite':<20} {'status':<6} {'pass':>8} {'fail':>6} {'flag':>6}")
    for name, res in report.suites.items():
        lines.append(f"{name:<20} {res['status']:<6} {res['passed']:>8} {res['failed']:>6} {res['flagged']:>6}")
    lines.append("")
    checks = {f"{s}/{c['name']}": c for s, r in report.suites.items() for c in r["checks"]}
    for cid, entry in report.coverage.items():
        lines.append(f"== {cid} [{entry['status']}]")
        if entry["statement"]:
            lines.append(f"   {entry['statement']}")
        for key in entry["checks"]:
            c = checks.get(key)
            if c is None:
                continue
            lines.append(f"   {c['status']:<4} {key}  pass={c['passed']} fail={c['failed']} flag={c['flagged']}")
            for payload in c["failures"][:3]:
                lines.append(f"        ! {json.dumps(payload, sort_keys=True)}")
        lines.append("")
    return "\n".join(lines)


def emit_report(report: Report, path, format: str = "structured") -> None:
    """Write the report; ``structured`` is JSON and round-trips through :func:`load_report`."""
    if format == "structured":
        text = json.dumps(report.to_dict(), sort_keys=True, indent=1) + "\n"
    elif format == "table-text":
        text = format_table(report) + "\n"
    else:
        raise ValueError(f"unknown report format {format!r}")
    _atomic_write(path, text)


def load_report(path) -> Report:
    return Report.from_dict(json.loads(Path(path).read_text()))
