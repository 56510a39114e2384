import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colorgraph import census
from colorgraph.errors import (
    DuplicateEdgeError,
    GenerationTimeoutError,
    InfeasibleSpecError,
    OutOfRangeError,
    SelfLoopError,
)
from colorgraph.graph import (
    Complete,
    CompleteBipartite,
    Cycle,
    ErdosRenyi,
    GaltonWatson,
    Hypercube,
    Inhomogeneous,
    Path,
    PathCycleGadget,
    RandomRegular,
    Star,
    basic_stats,
    from_edge_list,
    generate,
    parse_edge_list_text,
    parse_family,
    to_edge_list_text,
)


class TestConstruction:
    def test_triangle(self):
        g = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
        assert g.m == 3
        assert g.edges == ((0, 1), (0, 2), (1, 2))

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError, match=r"\(0, 0\)"):
            from_edge_list(2, [(0, 0)])

    def test_reversed_pair_is_duplicate(self):
        with pytest.raises(DuplicateEdgeError, match=r"\(1, 0\)"):
            from_edge_list(4, [(0, 1), (1, 0)])

    def test_out_of_range(self):
        with pytest.raises(OutOfRangeError, match=r"\(0, 5\)"):
            from_edge_list(3, [(0, 5)])

    def test_adjacency_matches_edges(self):
        g = from_edge_list(4, [(2, 0), (3, 1), (0, 1)])
        assert g.adjacency == ((1, 2), (0, 3), (0,), (1,))
        assert g.degrees == (2, 2, 1, 1)


class TestSerialization:
    def test_round_trip(self):
        g = generate(CompleteBipartite(2, 3))
        assert parse_edge_list_text(to_edge_list_text(g)) == g

    def test_idempotent(self):
        g = generate(Cycle(5))
        once = to_edge_list_text(g)
        assert to_edge_list_text(parse_edge_list_text(once)) == once

    def test_comments_ignored(self):
        text = "# a triangle\n3 3\n0 1\n# middle\n0 2\n1 2\n"
        assert parse_edge_list_text(text) == generate(Complete(3))

    def test_edge_count_mismatch(self):
        with pytest.raises(ValueError, match="declares"):
            parse_edge_list_text("2 2\n0 1\n")

    @given(st.integers(2, 8), st.data())
    @settings(max_examples=50, deadline=None)
    def test_round_trip_random(self, n, data):
        all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        pairs = data.draw(st.lists(st.sampled_from(all_pairs), unique=True, max_size=len(all_pairs)))
        g = from_edge_list(n, pairs)
        back = parse_edge_list_text(to_edge_list_text(g))
        assert back == g and back.adjacency == g.adjacency


class TestDeterministicFamilies:
    def test_complete(self):
        g = generate(Complete(4))
        assert (g.n, g.m) == (4, 6)

    def test_hypercube(self):
        g = generate(Hypercube(3))
        assert (g.n, g.m) == (8, 12)
        assert set(g.degrees) == {3}

    def test_star_path_cycle(self):
        assert basic_stats(generate(Star(4))) .degrees == (4, 1, 1, 1, 1)
        assert generate(Path(3)).m == 3
        assert generate(Cycle(6)).degrees == (2,) * 6

    def test_cycle_too_short(self):
        with pytest.raises(InfeasibleSpecError):
            generate(Cycle(2))

    def test_gadget_counts(self):
        # a path edges, a*b attached cycles each on g-2 fresh vertices
        g = generate(PathCycleGadget(5, 3, 3))
        assert (g.n, g.m) == (21, 35)
        assert census.count_cycles(g, 3) == 15
        tiny = generate(PathCycleGadget(1, 1, 3))
        assert (tiny.n, tiny.m) == (3, 3)

    def test_gadget_general_length(self):
        g = generate(PathCycleGadget(2, 2, 5))
        assert (g.n, g.m) == (2 * 2 * 3 + 3, 2 * 2 * 4 + 2)
        assert census.count_cycles(g, 5) == 4


class TestRandomFamilies:
    def test_er_deterministic(self):
        a = generate(ErdosRenyi(40, 0.2, 7))
        b = generate(ErdosRenyi(40, 0.2, 7))
        assert a == b
        assert to_edge_list_text(a) == to_edge_list_text(b)
        assert a != generate(ErdosRenyi(40, 0.2, 8))

    def test_er_extremes(self):
        assert generate(ErdosRenyi(10, 0.0, 1)).m == 0
        assert generate(ErdosRenyi(10, 1.0, 1)) == generate(Complete(10))

    def test_er_edge_count_plausible(self):
        g = generate(ErdosRenyi(200, 0.1, 3))
        mean = 0.1 * 199 * 100
        assert abs(g.m - mean) < 5 * (mean * 0.9) ** 0.5

    def test_inhomogeneous_indicator_grid(self):
        n = 5
        grid = [[0.0] * n for _ in range(n)]
        grid[0][1] = grid[1][0] = 1.0
        grid[2][3] = grid[3][2] = 1.0
        g = generate(Inhomogeneous(n, tuple(map(tuple, grid)), 3))
        assert g.edges == ((0, 1), (2, 3))

    def test_inhomogeneous_validation(self):
        with pytest.raises(InfeasibleSpecError):
            generate(Inhomogeneous(2, ((0.0, 0.4), (0.6, 0.0)), 1))

    def test_regular_degrees(self):
        for n, d, seed in ((10, 3, 0), (20, 4, 1), (15, 2, 2), (12, 4, 3)):
            g = generate(RandomRegular(n, d, seed))
            assert set(g.degrees) == {d}

    def test_regular_rejection_cap(self):
        # d = n - 1 admits only the complete graph; rejection cannot succeed
        with pytest.raises(GenerationTimeoutError):
            generate(RandomRegular(8, 7, 0))

    def test_regular_deterministic(self):
        assert generate(RandomRegular(16, 3, 5)) == generate(RandomRegular(16, 3, 5))

    def test_regular_infeasible(self):
        with pytest.raises(InfeasibleSpecError):
            generate(RandomRegular(5, 3, 0))
        with pytest.raises(InfeasibleSpecError):
            generate(RandomRegular(4, 4, 0))

    def test_galton_watson_is_tree(self):
        spec = GaltonWatson((0.2, 0.3, 0.5), 6, 11)
        g = generate(spec)
        stats = basic_stats(g)
        assert stats.components == 1
        assert stats.m == stats.n - 1
        assert g == generate(spec)

    def test_galton_watson_subcritical_allowed(self):
        g = generate(GaltonWatson((0.7, 0.3), 4, 2))
        assert g.m == g.n - 1

    def test_galton_watson_validation(self):
        with pytest.raises(InfeasibleSpecError):
            generate(GaltonWatson((0.5, 0.4), 3, 1))
        with pytest.raises(InfeasibleSpecError):
            generate(GaltonWatson((), 3, 1))


class TestFamilyGrammar:
    def test_examples(self):
        assert parse_family("complete:23") == Complete(23)
        assert parse_family("er:100:0.05:seed7") == ErdosRenyi(100, 0.05, 7)
        assert parse_family("gadget:30:30:3") == PathCycleGadget(30, 30, 3)
        assert parse_family("gw:0.2,0.3,0.5:4:9") == GaltonWatson((0.2, 0.3, 0.5), 4, 9)

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="unknown family"):
            parse_family("torus:3")

    def test_bad_arity(self):
        with pytest.raises(ValueError):
            parse_family("complete:3:4")


class TestBasicStats:
    def test_complete(self):
        assert basic_stats(generate(Complete(4))) == basic_stats(from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]))
        s = basic_stats(generate(Complete(4)))
        assert (s.n, s.m, s.components) == (4, 6, 1)
        assert s.degrees == (3, 3, 3, 3)

    def test_two_disjoint_edges(self):
        s = basic_stats(from_edge_list(4, [(0, 1), (2, 3)]))
        assert (s.n, s.m, s.degrees, s.components) == (4, 2, (1, 1, 1, 1), 2)

    def test_degree_sum(self):
        g = generate(ErdosRenyi(30, 0.3, 17))
        assert sum(g.degrees) == 2 * g.m
