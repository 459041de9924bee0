"""Tests for support digraphs, cycle search, orderings, closure and cycle means."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mat
from supertropical.digraph import (
    CycleWitness,
    SupportDigraph,
    find_cycle,
    longest_path_length,
    max_cycle_mean,
    reachability,
    shortest_path_length,
    support,
    topological_order,
)
from supertropical.errors import DimensionMismatch, NotADAG
from supertropical.matrix import Permutation, SuperMatrix, is_nilpotent_by_power, is_zero, mat_pow, zero_matrix
from supertropical.semiring import EPS, scalar

E = "eps"


def graph(n, *edges):
    return SupportDigraph(n, frozenset(edges))


@st.composite
def digraphs(draw):
    n = draw(st.integers(1, 6))
    vertex = st.integers(1, n)
    edges = draw(st.frozensets(st.tuples(vertex, vertex), max_size=12))
    return SupportDigraph(n, edges)


@st.composite
def dags(draw):
    n = draw(st.integers(1, 6))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    edges = draw(st.frozensets(st.sampled_from(pairs), max_size=12)) if pairs else frozenset()
    return SupportDigraph(n, edges)


def walk_endpoints(g, max_length):
    """Every (first, last) pair of an explicit walk with 1..max_length edges."""
    found = set()
    walks = [(v,) for v in range(1, g.n + 1)]
    for _ in range(max_length):
        walks = [w + (x,) for w in walks for x in g.successors(w[-1])]
        found.update((w[0], w[-1]) for w in walks)
    return found


class TestSupport:
    def test_zero_matrix_has_no_edges(self):
        assert support(zero_matrix(3)).edges == frozenset()

    def test_ghost_entry_is_an_edge(self):
        assert (1, 2) in support(mat([[E, [3, 3]], [E, E]])).edges

    def test_single_entry(self):
        a = SuperMatrix.from_entries(3, {(2, 1): scalar(4)})
        assert support(a).edges == {(2, 1)}

    def test_rejects_out_of_range_edge(self):
        with pytest.raises(ValueError):
            graph(2, (1, 3))

    def test_dump_is_sorted(self):
        g = graph(3, (3, 1), (1, 2), (2, 3), (1, 3))
        assert g.dump() == "1 2\n1 3\n2 3\n3 1\n"

    def test_union(self):
        assert graph(2, (1, 2)).union(graph(2, (2, 1))).edges == {(1, 2), (2, 1)}

    def test_union_rejects_other_sizes(self):
        with pytest.raises(DimensionMismatch):
            graph(2).union(graph(3))


class TestCycles:
    def test_two_cycle(self):
        assert find_cycle(graph(2, (1, 2), (2, 1))) == CycleWitness((1, 2))

    def test_self_loop(self):
        assert find_cycle(graph(1, (1, 1))) == CycleWitness((1,))

    def test_acyclic(self):
        assert find_cycle(graph(3, (2, 1), (3, 1), (2, 3))) is None

    def test_witness_is_deterministic(self):
        g = graph(4, (1, 2), (2, 3), (3, 1), (4, 4), (2, 4))
        assert find_cycle(g) == find_cycle(SupportDigraph(4, frozenset(sorted(g.edges, reverse=True))))

    @given(digraphs())
    def test_witness_lies_in_graph(self, g):
        cycle = find_cycle(g)
        if cycle is not None:
            assert cycle.is_in(g)

    @given(digraphs())
    def test_acyclic_iff_power_vanishes(self, g):
        a = SuperMatrix.from_entries(g.n, {edge: scalar(0) for edge in g.edges})
        assert (find_cycle(g) is None) == is_nilpotent_by_power(a)

    def test_witness_rejects_repeats(self):
        with pytest.raises(ValueError):
            CycleWitness((1, 2, 1))


class TestOrderings:
    def test_empty_graph_is_identity(self):
        assert topological_order(graph(3)) == Permutation.identity(3)

    def test_smallest_ready_vertex_first(self):
        perm = topological_order(graph(3, (2, 1), (3, 1), (2, 3)))
        assert perm == Permutation.from_mapping({2: 1, 3: 2, 1: 3})

    def test_single_edge_is_identity(self):
        assert topological_order(graph(2, (1, 2))) == Permutation.identity(2)

    def test_cyclic_graph_raises(self):
        with pytest.raises(NotADAG) as exc:
            topological_order(graph(2, (1, 2), (2, 1)))
        assert exc.value.cycle == CycleWitness((1, 2))
        assert "NotADAG" in str(exc.value)

    @given(digraphs())
    def test_labels_increase_along_edges(self, g):
        if find_cycle(g) is None:
            perm = topological_order(g)
            assert all(perm(u) < perm(v) for u, v in g.edges)

    def test_longest_path(self):
        assert longest_path_length(graph(3)) == 0
        assert longest_path_length(graph(3, (2, 3), (3, 1))) == 2
        assert longest_path_length(graph(3, (2, 1), (3, 1))) == 1
        with pytest.raises(NotADAG):
            longest_path_length(graph(1, (1, 1)))

    @given(dags())
    def test_longest_path_bounds_the_vanishing_power(self, g):
        a = SuperMatrix.from_entries(g.n, {e: scalar(0) for e in g.edges})
        length = longest_path_length(g)
        assert is_zero(mat_pow(a, length + 1))
        if length >= 1:
            assert not is_zero(mat_pow(a, length))

    def test_shortest_path(self):
        g = graph(4, (1, 2), (2, 3), (3, 1), (1, 3))
        assert shortest_path_length(g, 1, 3) == 1
        assert shortest_path_length(g, 2, 1) == 2
        assert shortest_path_length(g, 1, 1) == 2
        assert shortest_path_length(g, 4, 1) is None


class TestReachability:
    def test_chain(self):
        assert reachability(graph(3, (1, 2), (2, 3))).pairs() == {(1, 2), (2, 3), (1, 3)}

    def test_empty(self):
        assert reachability(graph(3)).pairs() == frozenset()

    def test_self_loop(self):
        closure = reachability(graph(2, (1, 1)))
        assert closure.pairs() == {(1, 1)}
        assert (2, 2) not in closure

    def test_cycle_reaches_itself(self):
        closure = reachability(graph(3, (1, 2), (2, 1), (2, 3)))
        assert list(closure) == [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]
        assert closure.reachable_from(3) == []

    @given(digraphs().filter(lambda g: g.n <= 5))
    def test_matches_walk_enumeration(self, g):
        assert reachability(g).pairs() == walk_endpoints(g, g.n)


class TestCycleMean:
    def test_self_loop(self):
        assert max_cycle_mean(mat([[3]])) == 3.0

    def test_strictly_upper_is_eps(self):
        assert max_cycle_mean(mat([[E, 1, 5], [E, E, 2], [E, E, E]])) == EPS

    def test_two_cycle(self):
        assert max_cycle_mean(mat([[E, 1], [3, E]])) == 2.0

    def test_uses_magnitude(self):
        assert max_cycle_mean(mat([[["eps", 4]]])) == 4.0
        assert max_cycle_mean(mat([[[1, 6]]])) == 6.0

    def test_picks_heaviest_cycle(self):
        a = mat([[1, 0, E], [E, E, 5], [E, 4, E]])
        assert max_cycle_mean(a) == 4.5
