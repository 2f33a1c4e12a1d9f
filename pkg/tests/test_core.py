from __future__ import annotations

import pytest
from hypothesis import given, settings

from twinwidth.core import (
    DiTrigraph,
    Graph,
    Partition,
    PartitionError,
    SameVertexError,
    Trigraph,
    UnknownVertexError,
    VertexExistsError,
    contract,
    contract_oriented,
    out_red_degree,
    quotient,
    red_degree,
)
from twinwidth.generators import complete_graph, fig1_graph, path_graph

from conftest import graphs, graphs_with_merges

A, B, C, D, E, F, G_ = range(7)


def _apply_picks(G: Graph, picks):
    """Replay merges chosen by index among current vertices; yield (trigraph, parts) after each."""
    T = Trigraph.from_graph(G)
    parts = {v: frozenset((v,)) for v in range(G.n)}
    nxt = G.n
    yield T, dict(parts)
    for a, b in picks:
        cur = sorted(T.vertices)
        u = cur[a % len(cur)]
        rest = [x for x in cur if x != u]
        v = rest[b % len(rest)]
        T = contract(T, u, v, nxt)
        parts[nxt] = parts.pop(u) | parts.pop(v)
        nxt += 1
        yield T, dict(parts)


def test_contract_fig1_first_step():
    T = contract(Trigraph.from_graph(fig1_graph()), E, F, 7)
    assert T.red_edges == {(A, 7), (D, 7)}
    assert {x for x in (B, C, G_) if (min(x, 7), max(x, 7)) in T.black_edges} == {B, C, G_}
    assert red_degree(T, 7) == 2


def test_contract_fig1_third_frame():
    T = Trigraph.from_graph(fig1_graph())
    T = contract(T, E, F, 7)
    T = contract(T, A, D, 8)
    assert red_degree(T, 8) == 2
    assert T.red_mask(8) == (1 << 7) | (1 << G_)


def test_contract_true_twins_creates_no_red():
    # 0 and 1 both adjacent to exactly {2, 3}
    G = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    T = contract(Trigraph.from_graph(G), 0, 1, 4)
    assert not T.red_edges
    assert T.black_edges == {(2, 3), (2, 4), (3, 4)}


def test_contract_isolated_vertices():
    T = contract(Trigraph.from_graph(Graph(2)), 0, 1, 2)
    assert T.vertices == {2}
    assert not T.black_edges and not T.red_edges


def test_all_black_graph_has_zero_red_degree():
    T = Trigraph.from_graph(complete_graph(4))
    assert all(red_degree(T, v) == 0 for v in T.vertices)


@pytest.mark.parametrize("u, v, w, exc", [
    (0, 9, 5, UnknownVertexError),
    (1, 1, 5, SameVertexError),
    (0, 1, 2, VertexExistsError),
])
def test_contract_errors(u, v, w, exc):
    T = Trigraph.from_graph(path_graph(4))
    with pytest.raises(exc):
        contract(T, u, v, w)
    with pytest.raises(exc):
        contract_oriented(DiTrigraph.from_graph(path_graph(4)), u, v, w)


def test_trigraph_rejects_overlapping_colours():
    with pytest.raises(ValueError):
        Trigraph([0, 1], black_edges=[(0, 1)], red_edges=[(1, 0)])


def test_ditrigraph_rejects_antiparallel_arcs():
    with pytest.raises(ValueError):
        DiTrigraph([0, 1], red_arcs=[(0, 1), (1, 0)])


def test_oriented_leaf_into_parent_points_away():
    # path 0-1-2: merge leaf 0 with its parent 1
    D = contract_oriented(DiTrigraph.from_graph(path_graph(3)), 0, 1, 3)
    assert D.red_arcs == {(3, 2)}
    assert out_red_degree(D, 3) == 1
    assert out_red_degree(D, 2) == 0


def test_oriented_both_out_arcs_stay_out():
    D = DiTrigraph([0, 1, 2], red_arcs=[(0, 2), (1, 2)])
    assert contract_oriented(D, 0, 1, 3).red_arcs == {(3, 2)}


def test_oriented_both_in_arcs_point_to_merged_vertex():
    D = DiTrigraph([0, 1, 2], red_arcs=[(2, 0), (2, 1)])
    R = contract_oriented(D, 0, 1, 3)
    assert R.red_arcs == {(2, 3)}
    assert out_red_degree(R, 3) == 0
    assert out_red_degree(R, 2) == 1


def test_oriented_single_in_arc_is_reoriented():
    # z->u red, v not adjacent to z: not the both-toward case
    D = DiTrigraph([0, 1, 2], red_arcs=[(2, 0)])
    assert contract_oriented(D, 0, 1, 3).red_arcs == {(3, 2)}


def test_oriented_new_red_edges_count_as_out_degree():
    # star centre 0 with leaves 1..3, plus leaf 4 on 1: merging 0 and 4 gives red to 2, 3
    G = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)])
    D = contract_oriented(DiTrigraph.from_graph(G), 0, 4, 5)
    assert out_red_degree(D, 5) == len(D.underlying().red_edges) == 2


def test_quotient_singletons_is_identity():
    G = fig1_graph()
    assert quotient(G, Partition.singletons(G.n)) == Trigraph.from_graph(G)


def test_quotient_whole_is_single_vertex():
    T = quotient(fig1_graph(), Partition.whole(7))
    assert len(T) == 1 and not T.black_edges and not T.red_edges


def test_quotient_matches_fig1_contraction():
    G = fig1_graph()
    P = Partition((frozenset({E, F}), *(frozenset({v}) for v in (A, B, C, D, G_))), 7)
    ids = [7 if p == {E, F} else min(p) for p in P.parts]
    assert quotient(G, P, ids) == contract(Trigraph.from_graph(G), E, F, 7)


@pytest.mark.parametrize("parts", [
    [{0, 1}, {1, 2}, {3}],
    [{0, 1}, {2}],
    [{0, 1}, {2}, {3}, {4}],
    [set(), {0, 1, 2, 3}],
])
def test_partition_validation(parts):
    with pytest.raises(PartitionError):
        Partition(tuple(frozenset(p) for p in parts), 4)


@settings(max_examples=150, deadline=None)
@given(graphs_with_merges())
def test_contraction_commutes_with_quotient(data):
    G, picks = data
    for T, parts in _apply_picks(G, picks):
        ids = list(parts)
        P = Partition(tuple(parts[i] for i in ids), G.n)
        # Partition sorts parts by min; line ids up accordingly
        order = {p: i for i, p in zip(ids, (parts[i] for i in ids))}
        assert quotient(G, P, [order[p] for p in P.parts]) == T


@settings(max_examples=150, deadline=None)
@given(graphs_with_merges())
def test_red_edges_never_turn_black(data):
    G, picks = data
    prev = None
    for T, _ in _apply_picks(G, picks):
        if prev is not None:
            survivors = {e for e in prev.red_edges if e[0] in T and e[1] in T}
            assert survivors <= T.red_edges
        prev = T


@settings(max_examples=150, deadline=None)
@given(graphs_with_merges())
def test_oriented_underlying_equals_plain(data):
    G, picks = data
    D = DiTrigraph.from_graph(G)
    T = Trigraph.from_graph(G)
    nxt = G.n
    for a, b in picks:
        cur = sorted(T.vertices)
        u = cur[a % len(cur)]
        rest = [x for x in cur if x != u]
        v = rest[b % len(rest)]
        T = contract(T, u, v, nxt)
        D = contract_oriented(D, u, v, nxt)
        nxt += 1
        assert D.underlying() == T
        assert D.max_out_red_degree() <= T.max_red_degree()


@given(graphs(max_n=7))
def test_graph_basics(G):
    assert sum(G.degree(v) for v in G.vertices) == 2 * G.m
    for u, v in G.edges:
        assert u < v and G.has_edge(v, u)
