import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import grid_rule as rule

from crordinal.finite import dismantle, eta_all
from crordinal.generators import (
    TruncationSpec,
    generate_complete,
    generate_cycle,
    generate_path,
    generate_random,
    generate_truncation,
    truncation_vertices,
)
from crordinal.graphio import GraphParseError, format_dot, format_edge_list, parse_dot, parse_edge_list, read_graph


class TestTruncation:
    def test_small_cases(self):
        G = generate_truncation(TruncationSpec(2))
        adj = lambda p, q: G.index(str(q).replace(" ", "")) in G.neighbors(G.index(str(p).replace(" ", "")))
        assert adj((0, 1), (1, 0))
        assert adj((0, 0), (1, 1))
        assert not adj((0, 1), (1, 1))

    def test_origin_neighbors_n3(self):
        G = generate_truncation(TruncationSpec(3))
        names = {G.labels[v] for v in G.neighbors(G.index("(0,0)"))}
        # axes and diagonal only: (1,2) and (2,1) are off all three cliques
        assert names == {"(0,1)", "(0,2)", "(1,0)", "(2,0)", "(1,1)", "(2,2)"}

    def test_tail(self):
        G = generate_truncation(TruncationSpec(4, 2))
        assert len(G) == 19
        nb = {G.labels[v] for v in G.neighbors(G.index("T(2)"))}
        assert nb == {"T(1)", "T(3)"}
        assert {G.labels[v] for v in G.neighbors(G.index("T(1)"))} == {"(0,0)", "T(2)"}

    @pytest.mark.parametrize("n,diag", [(3, True), (4, False), (5, True)])
    def test_matches_clause_rule(self, n, diag):
        spec = TruncationSpec(n, 0, diag)
        G = generate_truncation(spec)
        verts = truncation_vertices(spec)
        for i, p in enumerate(verts):
            for j, q in enumerate(verts):
                assert (j in G.neighbors(i)) == rule(p, q, diag)

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            TruncationSpec(1)
        with pytest.raises(ValueError):
            TruncationSpec(3, -1)


class TestFamilies:
    def test_path_capture_time(self):
        assert eta_all(generate_path(5)).capture_time == 2

    def test_cycle_not_dismantlable(self):
        assert dismantle(generate_cycle(4)) is None

    def test_random_deterministic(self):
        assert generate_random(8, 0.5, 0) == generate_random(8, 0.5, 0)
        assert generate_random(8, 0.5, 0) != generate_random(8, 0.5, 1)

    def test_bad_sizes(self):
        for f, k in [(generate_path, 0), (generate_cycle, 2), (generate_complete, 0)]:
            with pytest.raises(ValueError):
                f(k)
        with pytest.raises(ValueError):
            generate_random(3, 1.5, 0)


class TestIO:
    def test_edge_list(self):
        G = parse_edge_list("# P3\na b\nb c  # trailing\n\nd\n")
        assert G.labels == ("a", "b", "c", "d")
        assert G.edges() == [(0, 1), (1, 2)]

    def test_edge_list_errors(self):
        with pytest.raises(GraphParseError) as exc:
            parse_edge_list("a b\na b c\n")
        assert exc.value.line == 2
        with pytest.raises(GraphParseError) as exc:
            parse_edge_list("a a\n")
        assert exc.value.line == 1

    def test_dot(self):
        G = parse_dot('strict graph G {\n  a -- b -- c;\n  "(0,1)" -- a;\n  lone;\n}\n')
        assert set(G.labels) == {"a", "b", "c", "(0,1)", "lone"}
        assert len(G.edges()) == 3

    def test_dot_errors(self):
        with pytest.raises(GraphParseError):
            parse_dot("digraph { a -> b }")
        with pytest.raises(GraphParseError) as exc:
            parse_dot("graph {\n a -- ;\n}")
        assert exc.value.line == 2
        with pytest.raises(GraphParseError):
            parse_dot("graph { a -- b")

    @given(st.integers(1, 7), st.floats(0, 1), st.integers(0, 1000))
    def test_round_trips(self, k, p, seed):
        G = generate_random(k, p, seed)
        assert parse_edge_list(format_edge_list(G)).edges() == G.edges()
        assert parse_dot(format_dot(G)).edges() == G.edges()

    def test_truncation_round_trip_with_parenthesized_labels(self, tmp_path):
        G = generate_truncation(TruncationSpec(3, 1))
        f = tmp_path / "t.dot"
        f.write_text(format_dot(G))
        H = read_graph(f)
        assert H.labels == G.labels and H.edges() == G.edges()
        f2 = tmp_path / "t.txt"
        f2.write_text(format_edge_list(G))
        assert read_graph(f2).edges() == G.edges()
