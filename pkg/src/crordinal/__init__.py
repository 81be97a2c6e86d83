"""Cops and robbers capture times: finite solvers and the transfinite grid graphs."""

__version__ = "0.1.0"

from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalCapacityError,
    OrdinalDomainError,
    OrdinalError,
    OrdinalParseError,
    add,
    compare,
    format_ordinal,
    is_limit,
    ordinal,
    parse,
    split_successor,
    successor,
)
from .finite import (
    NOT_DISMANTLABLE,
    ROBBER_WINS,
    CaptureTimeSolver,
    EtaTable,
    FiniteGraph,
    check_graph,
    closed_neighborhood,
    dismantle,
    dominates,
    eta_all,
    naive_game_value,
    optimal_cop_policy,
)
from .generators import (
    TruncationSpec,
    generate_complete,
    generate_cycle,
    generate_path,
    generate_random,
    generate_truncation,
)
from .symbolic import (
    ORIGIN,
    Certificate,
    Grid,
    OrdinalBound,
    SymbolicGraph,
    Tail,
    Violation,
    adjacent,
    certify,
    eta_bounds,
    rho,
    witness,
)
from .strategies import PlayTrace, cop_strategy, robber_strategy, simulate
from .harness import Report, SuiteConfig, emit_report, run_suite
