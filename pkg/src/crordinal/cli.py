"""Command-line interface: ``crordinal <subcommand> ...``.

Exit codes: 0 success, 1 a check or audit failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from . import __version__
from .finite import ROBBER_WINS, dismantle, eta_all
from .generators import (
    TruncationSpec,
    generate_complete,
    generate_cycle,
    generate_path,
    generate_random,
    generate_truncation,
)
from .graphio import GraphParseError, format_dot, format_edge_list, read_graph
from .harness import SUITES, ConfigError, SuiteConfig, _atomic_write, emit_report, format_table, run_suites
from .ordinal import OrdinalError, format_ordinal, parse
from .strategies import (
    ROUND_CAP,
    BudgetedRobber,
    GreedyBoundCop,
    PursuitCop,
    RandomRobber,
    StayRobber,
    simulate,
)
from .symbolic import (
    LEMMAS,
    Claim,
    SymbolicGraph,
    VertexError,
    certify,
    claim_rank,
    eta_bounds,
    parse_vertex,
    rho,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(x: int) -> str:
    return "ROBBER_WINS" if x == ROBBER_WINS else str(int(x))


class _Output:
    def __init__(self, args):
        self.path = args.out
        self.structured = args.format == "structured"
        self.parts: List[str] = []

    def emit(self, human: str, data=None):
        if self.structured:
            self.parts.append(json.dumps(data, sort_keys=True, indent=1))
        else:
            self.parts.append(human)

    def flush(self):
        text = "\n".join(self.parts) + "\n"
        if self.path:
            _atomic_write(self.path, text)
        else:
            sys.stdout.write(text)


# -- argument helpers -------------------------------------------------------------

def _symbolic_graph(args) -> SymbolicGraph:
    try:
        gamma = parse(args.gamma)
    except OrdinalError as exc:
        raise UsageError(f"bad --gamma: {exc}")
    try:
        return SymbolicGraph(gamma, args.tail, not args.no_diagonal)
    except ValueError as exc:
        raise UsageError(str(exc))


def _vertex(G: SymbolicGraph, text: str, flag: str):
    try:
        v = parse_vertex(text)
    except VertexError as exc:
        raise UsageError(f"bad {flag}: {exc}")
    if not G.contains(v):
        raise UsageError(f"{flag} {text} is not a vertex of {G}")
    return v


def _read_graph(path: str):
    try:
        return read_graph(path)
    except GraphParseError as exc:
        raise UsageError(f"{path}: {exc}")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}")


# -- subcommands ------------------------------------------------------------------

def cmd_solve(args, out: _Output) -> int:
    G = _read_graph(args.graph)
    table = eta_all(G)
    labels = list(G.labels)
    if args.pair:
        try:
            u, v = (G.index(x) for x in args.pair)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"unknown vertex in --pair: {exc}")
        val = int(table.values[u, v])
        out.emit(_fmt(val), {"robber": labels[u], "cop": labels[v], "eta": _fmt(val)})
        return EXIT_OK
    width = max(len(s) for s in labels + ["ROBBER_WINS"]) + 1
    lines = ["robber \\ cop".ljust(width) + "".join(l.rjust(width) for l in labels)]
    for u, row in enumerate(table.values):
        lines.append(labels[u].ljust(width) + "".join(("-" if x == ROBBER_WINS else str(x)).rjust(width) for x in row))
    lines.append("('-' marks ROBBER_WINS)")
    lines.append("")
    lines.append("cop start".ljust(width) + "eta(v)")
    for v, x in enumerate(table.eta_per_cop_start):
        lines.append(labels[v].ljust(width) + _fmt(x))
    lines.append(f"eta(G)={_fmt(table.capture_time)}, rho(G)={_fmt(table.max_capture_time)}")
    out.emit("\n".join(lines), table.to_dict())
    return EXIT_OK


def cmd_dismantle(args, out: _Output) -> int:
    G = _read_graph(args.graph)
    order = dismantle(G)
    if order is None:
        out.emit("NOT_DISMANTLABLE", {"dismantlable": False, "order": None})
    else:
        names = [G.labels[v] for v in order]
        out.emit(" ".join(names), {"dismantlable": True, "order": names})
    return EXIT_OK


def cmd_gen(args, out: _Output) -> int:
    try:
        if args.family == "path":
            G = generate_path(args.k)
        elif args.family == "cycle":
            G = generate_cycle(args.k)
        elif args.family == "complete":
            G = generate_complete(args.k)
        elif args.family == "random":
            G = generate_random(args.k, args.p, args.seed)
        else:
            G = generate_truncation(TruncationSpec(args.k, args.tail, not args.no_diagonal))
    except ValueError as exc:
        raise UsageError(str(exc))
    text = format_dot(G) if args.graph_format == "dot" else format_edge_list(G)
    out.emit(text.rstrip("\n"), {"labels": list(G.labels), "edges": [[G.labels[u], G.labels[v]] for u, v in G.edges()]})
    return EXIT_OK


def cmd_eta(args, out: _Output) -> int:
    G = _symbolic_graph(args)
    u, v = _vertex(G, args.u, "--u"), _vertex(G, args.v, "--v")
    b = eta_bounds(G, u, v)
    if b.exact:
        human = f"exact {format_ordinal(b.lower)}"
    else:
        human = f"lower {format_ordinal(b.lower)}\nupper {format_ordinal(b.upper)}\nexact false"
    out.emit(human, {"graph": str(G), "u": str(u), "v": str(v), **b.to_dict()})
    return EXIT_OK


def cmd_rho(args, out: _Output) -> int:
    G = _symbolic_graph(args)
    r = format_ordinal(rho(G))
    out.emit(r, {"graph": str(G), "rho": r})
    return EXIT_OK


def cmd_certify(args, out: _Output) -> int:
    G = _symbolic_graph(args)
    u, v = _vertex(G, args.u, "--u"), _vertex(G, args.v, "--v")
    lemma = args.lemma
    if lemma == "auto":
        lemma = eta_bounds(G, u, v).sources[1]
        if lemma not in LEMMAS:
            raise UsageError(f"no upper-bound argument for ({u}, {v}); pass --lemma")
    try:
        rank = claim_rank(G, lemma, u, v)
    except ValueError as exc:
        raise UsageError(str(exc))
    claim = Claim(lemma, u, v, rank)
    res = certify(G, claim, max_samples=args.samples, rng=random.Random(args.seed), record=False)
    data = {"graph": str(G), **res.to_dict()}
    if res.passed:
        human = (f"PASS {claim}\n  samples={res.samples} total_steps={res.total_steps} "
                 f"max_depth={res.max_depth}")
    else:
        human = f"FAIL {claim}\n  {res.message}\n  at: {' / '.join(res.path)}"
    out.emit(human, data)
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_simulate(args, out: _Output) -> int:
    G = _symbolic_graph(args)
    cop, robber = _vertex(G, args.cop, "--cop"), _vertex(G, args.robber, "--robber")
    if cop == robber:
        raise UsageError("--cop and --robber must differ")
    cops = {"pursuit": PursuitCop, "greedy": GreedyBoundCop}
    robbers = {"stay": StayRobber, "random": RandomRobber, "budgeted": lambda: BudgetedRobber(args.budget)}
    trace = simulate(G, cops[args.cop_policy](), robbers[args.robber_policy](), (cop, robber),
                     max_rounds=args.max_rounds, rng=random.Random(args.seed), first=args.first)
    lines = [f"{'round':>5}  {'cop':<24} {'robber':<24} phase"]
    for i, ((r, c), p) in enumerate(zip(trace.rounds, trace.phases), 1):
        lines.append(f"{i:>5}  {str(c):<24} {str(r):<24} {p}")
    status = "captured" if trace.captured else "not captured"
    lines.append(f"{status} after {trace.cop_moves} cop moves")
    if trace.violation:
        lines.append(f"rule violation: {trace.violation}")
    out.emit("\n".join(lines), {"graph": str(G), **trace.to_dict()})
    return EXIT_FAIL if trace.violation else EXIT_OK


def cmd_verify(args, out: _Output) -> int:
    try:
        config = SuiteConfig.from_file(args.config) if args.config else SuiteConfig()
        if args.seed_given:
            config.seed = args.seed
        if args.samples:
            config.samples_per_claim = args.samples
        config.validate()
    except (ConfigError, OrdinalError, OSError) as exc:
        raise UsageError(f"bad configuration: {exc}")
    report = run_suites(args.suite or ["all"], config, workers=args.workers)
    path = args.out or "crordinal-report.json"
    emit_report(report, path, args.report_format)
    if args.table:
        emit_report(report, args.table, "table-text")
    summary = "\n".join(f"{name:<20} {res['status']}  pass={res['passed']} fail={res['failed']} "
                        f"flag={res['flagged']}" for name, res in report.suites.items())
    summary += f"\nreport written to {path}; exit code {report.exit_code}"
    if args.format == "structured":
        sys.stdout.write(json.dumps({"report": path, "exit_code": report.exit_code}) + "\n")
    else:
        sys.stdout.write(summary + "\n")
    return report.exit_code


def cmd_ord(args, out: _Output) -> int:
    try:
        value = parse(" ".join(args.expr))
    except OrdinalError as exc:
        raise UsageError(str(exc))
    text = format_ordinal(value)
    out.emit(text, {"ordinal": text, "cnf": value.to_json(), "limit": value.is_limit()})
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

class _SeedAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.seed_given = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, action=_SeedAction, help="random seed (default 0)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("human", "structured"), default="human",
                        help="human-readable text (default) or JSON")

    symbolic = argparse.ArgumentParser(add_help=False)
    symbolic.add_argument("--gamma", required=True, help="infinite limit ordinal in the w grammar, e.g. w^2")
    symbolic.add_argument("--tail", type=int, default=0, help="tail length n (default 0)")
    symbolic.add_argument("--no-diagonal", action="store_true", help="drop the diagonal clique")

    p = argparse.ArgumentParser(prog="crordinal", description="Capture times of cops and robbers, finite and transfinite.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("solve", parents=[common], help="capture-time table of a finite graph")
    s.add_argument("--graph", required=True, help="edge list or DOT file")
    s.add_argument("--pair", nargs=2, metavar=("ROBBER", "COP"), help="print one entry")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("dismantle", parents=[common], help="elimination order or NOT_DISMANTLABLE")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_dismantle)

    s = sub.add_parser("gen", parents=[common], help="generate a finite graph")
    s.add_argument("family", choices=("path", "cycle", "complete", "random", "truncation"))
    s.add_argument("k", type=int, help="vertex count, or grid size N for truncations")
    s.add_argument("--p", type=float, default=0.5, help="edge probability for random graphs")
    s.add_argument("--tail", type=int, default=0, help="tail length for truncations")
    s.add_argument("--no-diagonal", action="store_true", help="truncation without the diagonal clique")
    s.add_argument("--graph-format", choices=("edges", "dot"), default="edges")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("eta", parents=[common, symbolic], help="capture-time bounds for one pair")
    s.add_argument("--u", required=True, help="robber vertex, '(a,b)' or 'T(i)'")
    s.add_argument("--v", required=True, help="cop vertex")
    s.set_defaults(func=cmd_eta)

    s = sub.add_parser("rho", parents=[common, symbolic], help="maximum capture time")
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("certify", parents=[common, symbolic], help="audit an upper-bound claim by witness descent")
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s.add_argument("--lemma", choices=("auto",) + LEMMAS, default="auto",
                   help="argument to audit (default: the one giving the tightest upper bound)")
    s.add_argument("--samples", type=int, default=200, help="challenges at the root (default 200)")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("simulate", parents=[common, symbolic], help="play a game and print the trace")
    s.add_argument("--cop", required=True)
    s.add_argument("--robber", required=True)
    s.add_argument("--cop-policy", choices=("pursuit", "greedy"), default="pursuit")
    s.add_argument("--robber-policy", choices=("stay", "random", "budgeted"), default="random")
    s.add_argument("--budget", type=int, default=5, help="budget k for the budgeted robber")
    s.add_argument("--max-rounds", type=int, default=ROUND_CAP)
    s.add_argument("--first", choices=("cop", "robber"), default="cop")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("verify", parents=[common], help="run verification suites and write a report")
    s.add_argument("--suite", action="append", choices=SUITES + ("all",),
                   help="suite to run; repeatable (default all)")
    s.add_argument("--config", help="key=value configuration file")
    s.add_argument("--samples", type=int, help="override samples_per_claim")
    s.add_argument("--workers", type=int, default=None, help="run suites in parallel processes")
    s.add_argument("--report-format", choices=("structured", "table-text"), default="structured")
    s.add_argument("--table", help="also write a table-text report here")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ord", parents=[common], help="normalize an ordinal expression")
    s.add_argument("expr", nargs="+", help="expression in the w grammar, e.g. 'w*2+5 + w'")
    s.set_defaults(func=cmd_ord)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "seed_given"):
        args.seed_given = False
    out = _Output(args)
    try:
        code = args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"crordinal {args.command}: error: {exc}\n")
        return EXIT_USAGE
    if args.command != "verify":
        out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
