import random
import sys

import pytest
from hypothesis import strategies as st

from crordinal.ordinal import Ordinal, ordinal


def _build(pairs):
    # merge and sort (exponent, coefficient) pairs into canonical form
    acc = {}
    for e, c in pairs:
        acc[e] = acc.get(e, 0) + c
    return Ordinal(sorted(acc.items(), key=lambda t: t[0], reverse=True))


finite_ordinals = st.integers(min_value=0, max_value=50).map(ordinal)

ordinals = st.recursive(
    finite_ordinals,
    lambda inner: st.lists(st.tuples(inner, st.integers(min_value=1, max_value=6)), min_size=1, max_size=3).map(_build),
    max_leaves=8,
)

# below w^w: exponents are naturals, so a coefficient vector is an independent encoding
small_ordinals = st.dictionaries(st.integers(0, 4), st.integers(1, 6), max_size=4).map(
    lambda d: Ordinal(sorted(((ordinal(e), c) for e, c in d.items()), key=lambda t: t[0], reverse=True))
)


def grid_rule(p, q, diagonal=True):
    """Edge rule written clause by clause, independent of both implementations."""
    (a0, b0), (a1, b1) = p, q
    if p == q:
        return False
    clauses = [
        a0 == 0 and a1 == 0,
        b0 == 0 and b1 == 0,
        diagonal and a0 == b0 and a1 == b1,
        a0 < a1 and b0 > b1,
        a0 > a1 and b0 < b1,
    ]
    return any(clauses)


@pytest.fixture
def rng():
    return random.Random(0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
