import random

import pytest
from conftest import grid_rule
from hypothesis import given, settings
from hypothesis import strategies as st

from crordinal.generators import grid_adjacent
from crordinal.harness import sample_claim
from crordinal.ordinal import OMEGA, ordinal, parse
from crordinal.symbolic import (
    LEMMAS,
    ORIGIN,
    Certificate,
    Claim,
    Grid,
    HypothesisViolation,
    NeighborhoodSampler,
    SymbolicGraph,
    Tail,
    Violation,
    VertexError,
    Witness,
    adjacent,
    certify,
    claim_rank,
    eta_bounds,
    has_diagonal_neighbor,
    in_closed,
    parse_vertex,
    rho,
    witness,
)

W = parse

coords = st.sampled_from(["0", "1", "2", "3", "7", "w", "w+1", "w+5", "w*2", "w*2+3", "w^2", "w^2+1", "w^3"]).map(W)
grid_points = st.builds(Grid, coords, coords)


def G_(gamma="w^w", n=0, diag=True):
    return SymbolicGraph(W(gamma), n, diag)


class TestVertices:
    def test_parse_and_format(self):
        assert parse_vertex("(w+1, 3)") == Grid(W("w+1"), 3)
        assert parse_vertex("T(2)") == Tail(2)
        assert str(Grid(W("w^2"), 0)) == "(w^2,0)"

    @pytest.mark.parametrize("text", ["(w_invalid)", "(1,2,3)", "T(x)", "1,2", "(w^,1)"])
    def test_bad_vertices(self, text):
        with pytest.raises(VertexError):
            parse_vertex(text)

    def test_membership(self):
        G = G_("w", 2)
        assert G.contains(Tail(3)) and not G.contains(Tail(4)) and not G.contains(Tail(0))
        assert not G.contains(Grid(OMEGA, 0))
        with pytest.raises(VertexError):
            adjacent(G, Grid(OMEGA, 0), ORIGIN)

    def test_graph_validation(self):
        with pytest.raises(ValueError):
            SymbolicGraph(W("w+1"))
        with pytest.raises(ValueError):
            SymbolicGraph(ordinal(5))
        with pytest.raises(ValueError):
            SymbolicGraph(OMEGA, 2, False)


class TestAdjacency:
    def test_examples(self):
        G = G_()
        assert adjacent(G, Grid(OMEGA, 3), Grid(5, W("w*2")))
        assert not adjacent(G, Grid(1, 2), Grid(1, 3))
        assert not adjacent(G_(diag=False), Grid(7, 7), Grid(OMEGA, OMEGA))
        assert adjacent(G, Grid(7, 7), Grid(OMEGA, OMEGA))

    def test_tail(self):
        G = G_("w", 3)
        assert adjacent(G, Tail(1), ORIGIN) and adjacent(G, Tail(2), Tail(3))
        assert not adjacent(G, Tail(1), Grid(1, 0)) and not adjacent(G, Tail(1), Tail(3))

    @given(grid_points, grid_points, st.booleans())
    def test_symmetric_irreflexive_swap_invariant(self, u, v, diag):
        G = G_(diag=diag)
        assert adjacent(G, u, v) == adjacent(G, v, u)
        assert not adjacent(G, u, u)
        assert adjacent(G, u, v) == adjacent(G, u.swap(), v.swap())

    @given(grid_points, grid_points)
    def test_variant_differs_only_on_diagonal_pairs(self, u, v):
        if adjacent(G_(), u, v) != adjacent(G_(diag=False), u, v):
            assert u.on_diagonal and v.on_diagonal

    @given(st.integers(0, 9), st.integers(0, 9), st.integers(0, 9), st.integers(0, 9), st.booleans())
    def test_finite_points_match_clause_rule(self, a, b, c, d, diag):
        G = G_(diag=diag)
        expected = grid_rule((a, b), (c, d), diag)
        assert adjacent(G, Grid(a, b), Grid(c, d)) == expected
        assert grid_adjacent((a, b), (c, d), diag) == expected

    def test_consecutive_point_sees_no_diagonal(self):
        # (2,3): a diagonal (d,d) needs 2 < d < 3 or a shared axis
        G = G_("w^2")
        diag = [Grid(d, d) for d in list(range(40)) + [W("w"), W("w+1"), W("w*2")]]
        assert not any(in_closed(G, x, Grid(2, 3)) for x in diag)
        assert not has_diagonal_neighbor(G, Grid(2, 3))
        assert has_diagonal_neighbor(G, Grid(3, 7))


class TestBounds:
    def test_diagonal_robber_against_off_diagonal_cop(self):
        b = eta_bounds(G_("w^2"), Grid(OMEGA, OMEGA), Grid(3, 7))
        assert b.exact and b.lower == W("w^2")

    def test_tail_robber_one_step_ahead(self):
        b = eta_bounds(G_("w", 3), Tail(3), Tail(4))
        assert b.exact and b.lower == W("w+3")

    def test_axis_chase_bound_is_the_small_coordinate(self):
        b = eta_bounds(G_("w"), Grid(3, 2), Grid(9, 0))
        assert (b.lower, b.upper) == (2, 2) and b.exact
        assert b.sources == ("min-coordinate", "x-axis")

    def test_cop_without_diagonal_neighbour_costs_one_more(self):
        b = eta_bounds(G_("w"), Grid(5, 5), Grid(2, 3))
        assert b.exact and b.lower == W("w+1")

    def test_equal(self):
        assert eta_bounds(G_(), Grid(3, 3), Grid(3, 3)).upper == 0

    @given(grid_points, grid_points, st.integers(0, 3), st.booleans())
    @settings(max_examples=300)
    def test_bounds_are_ordered_and_below_rho(self, u, v, n, diag):
        G = G_(n=n, diag=diag or n > 0)
        b = eta_bounds(G, u, v)
        assert b.lower <= b.upper <= rho(G)
        if u != v:
            assert b.lower >= 1

    def test_rho(self):
        assert rho(G_("w^2", 5)) == W("w^2+5")
        assert rho(G_("w^w", 0, False)) == W("w^w")
        assert rho(G_("w")) == W("w+1")

    @pytest.mark.parametrize("gamma", ["w", "w*2", "w^2", "w^w"])
    def test_rho_is_attained(self, gamma):
        for n in (0, 1, 3):
            G = G_(gamma, n)
            u, v = (Tail(n), Tail(n + 1)) if n else (Grid(5, 5), Grid(2, 3))
            assert eta_bounds(G, u, v).lower == rho(G)
        # the variant only approaches gamma: lower bounds are cofinal in it
        G = G_(gamma, 0, False)
        for a in [ordinal(k) for k in (1, 10, 100)] + [c for c in map(W, ("w", "w^2", "w^3")) if c < G.gamma]:
            assert a <= eta_bounds(G, Grid(a, a), Grid(0, a + 1)).lower < rho(G)


class TestWitness:
    def test_axis_chase(self):
        y, d = witness(G_("w"), "x-axis", Grid(3, 2), Grid(9, 0), Grid(12, 1))
        assert (y, d) == (Grid(13, 0), 1)

    def test_capture_inside_cop_neighbourhood(self):
        w = witness(G_("w"), "x-axis", Grid(3, 2), Grid(9, 0), Grid(2, 5))
        assert tuple(w) == (Grid(2, 5), 0)

    def test_diagonal_pair(self):
        y, d = witness(G_("w^2"), "diagonal", Grid(OMEGA, OMEGA), Grid(2, 2), Grid(W("w+1"), 3))
        assert (y, d) == (Grid(W("w+2"), 0), 3)

    def test_hypotheses_enforced(self):
        with pytest.raises(HypothesisViolation):
            witness(G_("w"), "x-axis", Grid(2, 3), Grid(9, 0), Grid(1, 5))
        with pytest.raises(HypothesisViolation):
            witness(G_("w"), "x-axis", Grid(3, 2), Grid(9, 0), Grid(3, 3))

    def test_grid_bound_fails_at_a_cop_without_diagonal_neighbour(self):
        G = G_("w")
        assert claim_rank(G, "grid-upper", Grid(5, 5), Grid(2, 3)) == OMEGA
        with pytest.raises(HypothesisViolation):
            witness(G, "grid-upper", Grid(5, 5), Grid(2, 3), Grid(5, 5))
        w = witness(G, "grid-upper-tail", Grid(5, 5), Grid(2, 3), Grid(5, 5))
        assert w.rank == OMEGA and in_closed(G, w.vertex, Grid(2, 3))


FAMILY_OF = {
    "x-axis": ("x-axis-chase", 0),
    "y-axis": ("y-axis-chase", 0),
    "diagonal": ("diagonal-pair", 0),
    "grid-upper-tail": ("tail-grid-upper", 2),
    "origin-cop": ("tail-grid-upper", 2),
    "tail-cop": ("tail-cop-upper", 2),
}


def _claims(lemma, gamma, rng):
    family, n = FAMILY_OF[lemma]
    G = G_(gamma, n)
    while True:
        c = sample_claim(G, family, rng)
        if c.lemma == lemma:
            return G, c


def _check_reply(G, c, x):
    y, d = witness(G, c.lemma, c.u, c.v, x)
    assert in_closed(G, y, c.v)
    assert d < c.rank
    if d == 0:
        assert y == x


@pytest.mark.parametrize("lemma", sorted(FAMILY_OF))
@pytest.mark.parametrize("gamma", ["w", "w^2", "w^w"])
def test_witness_is_total_on_its_hypotheses(lemma, gamma):
    rng = random.Random(f"{lemma}:{gamma}")
    sampler = NeighborhoodSampler(adversarial=0.9)
    for _ in range(100):
        G, c = _claims(lemma, gamma, rng)
        for x in sampler(G, c.u, c.v, rng, 10):
            _check_reply(G, c, x)


def test_tail_path_and_tail_robber_witnesses():
    G = G_("w^2", 3)
    rng = random.Random(1)
    sampler = NeighborhoodSampler()
    cases = [("tail-path", Tail(3), Tail(1)), ("tail-path", Tail(4), ORIGIN), ("tail-path", Tail(2), Tail(1)),
             ("tail-robber", Tail(2), Grid(5, 9)), ("tail-robber", Tail(1), Grid(4, 0)),
             ("tail-robber", Tail(4), Grid(W("w+1"), W("w+2")))]
    for lemma, u, v in cases:
        c = Claim(lemma, u, v, claim_rank(G, lemma, u, v))
        for x in sampler(G, u, v, rng, 20):
            _check_reply(G, c, x)


def test_grid_bound_failures_are_exactly_the_missing_diagonal_cases():
    G = G_("w^2")
    rng = random.Random(3)
    sampler = NeighborhoodSampler(adversarial=1.0)
    failures = 0
    for _ in range(1000):
        c = sample_claim(G, "grid-upper", rng)
        for x in sampler(G, c.u, c.v, rng, 1):
            try:
                _check_reply(G, c, x)
            except HypothesisViolation:
                failures += 1
                assert x.on_diagonal and not has_diagonal_neighbor(G, c.v)
    assert failures > 0


class TestCertify:
    def test_equality_leaf(self):
        res = certify(G_("w"), Claim("equal", Grid(3, 3), Grid(3, 3), ordinal(0)))
        assert isinstance(res, Certificate) and res.root.kind == "equality" and not res.root.steps

    def test_axis_chase_instance(self):
        G = G_("w^2")
        u, v = Grid(OMEGA, 5), Grid(W("w+1"), 0)
        claim = Claim("x-axis", u, v, claim_rank(G, "x-axis", u, v))
        assert claim.rank == 5
        res = certify(G, claim, max_samples=200, rng=random.Random(0))
        assert res.passed and res.samples == 200 and res.max_depth <= 6

    def test_corrupted_rank_is_caught_at_depth_one(self):
        G = G_("w^2")
        u, v = Grid(OMEGA, 5), Grid(W("w+1"), 0)

        def broken(G, lemma, u, v, x):
            w = witness(G, lemma, u, v, x)
            return Witness(w.vertex, claim_rank(G, lemma, u, v), w.lemma) if w.rank else w

        res = certify(G, Claim("x-axis", u, v, ordinal(5)), witness_fn=broken,
                      sampler=NeighborhoodSampler(adversarial=1.0))
        assert isinstance(res, Violation) and res.depth == 1 and "does not drop" in res.message

    def test_wrong_rank_zero_claim(self):
        res = certify(G_("w"), Claim("equal", Grid(3, 3), Grid(4, 4), ordinal(0)))
        assert not res.passed and res.depth == 0

    def test_lemma_ids(self):
        assert set(FAMILY_OF) | {"equal", "grid-upper", "tail-path", "tail-robber"} == set(LEMMAS)
