from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twinwidth.core import Graph
from twinwidth.generators import (
    GtParams,
    build_gt,
    build_kary_tree,
    cycle_graph,
    path_graph,
    random_tree,
)
from twinwidth.matrix import adjacency_matrix, delete_rows_cols, longest_decreasing_chain
from twinwidth.sequences import verify, verify_oriented
from twinwidth.witnesses import VertexOrder, gt_order, gt_oriented_sequence, tree_sequence


def test_single_vertex_tree():
    seq = tree_sequence(Graph(1))
    assert seq.steps == ()
    assert verify(seq, full=True).width == 0


@pytest.mark.parametrize("root", [0, 3])
def test_star(root):
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    seq = tree_sequence(star, root=root)
    assert verify(seq, full=True).width <= 1
    assert verify_oriented(seq, full=True).width <= 1


def test_rejects_non_trees():
    with pytest.raises(ValueError):
        tree_sequence(cycle_graph(4))
    with pytest.raises(ValueError):
        tree_sequence(Graph.from_edges(4, [(0, 1), (2, 3)]))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 70), st.integers(0, 10**6), st.data())
def test_random_trees_width_bounds(n, seed, data):
    T = random_tree(n, seed)
    root = data.draw(st.integers(0, n - 1))
    seq = tree_sequence(T, root=root)
    assert len(seq) == n - 1
    assert verify(seq, full=True).width <= 2
    assert verify_oriented(seq, full=True).width <= 1


@pytest.mark.parametrize("arity, depth", [(2, 5), (3, 3), (5, 2), (1, 30)])
def test_regular_trees(arity, depth):
    seq = tree_sequence(build_kary_tree(arity, depth))
    assert verify(seq, full=True).width <= 2
    assert verify_oriented(seq, full=True).width <= 1


def test_long_path_does_not_recurse():
    seq = tree_sequence(path_graph(3000), root=1500)
    assert verify_oriented(seq, full=True).width <= 1


@pytest.mark.parametrize("t, depth", list(itertools.product([1, 2, 3], [1, 2, 3, 4])))
def test_gt_oriented_sequence(t, depth):
    G = build_gt(GtParams(t, depth))
    seq = gt_oriented_sequence(G)
    oriented = verify_oriented(seq, full=True).width
    plain = verify(seq, full=True).width
    assert oriented <= t + 1
    assert oriented <= plain
    # the apexes are untouched until the tree is a single vertex
    tree_steps = len(G.tree_nodes) - 1
    assert all(x not in (s.u, s.v) for s in seq.steps[:tree_steps] for x in G.apexes)


def test_gt_order_small_case():
    G = build_gt(GtParams(1, 2))
    # apex 0, root 1, children 2 and 3, leaves 4,5 under 2 and 6,7 under 3
    assert gt_order(G).order == (0, 4, 5, 6, 7, 2, 3, 1)


@pytest.mark.parametrize("t, depth", list(itertools.product([1, 2, 3], [1, 2, 3])))
def test_gt_order_layout(t, depth):
    G = build_gt(GtParams(t, depth), shuffle_seed=t * 10 + depth)
    order = gt_order(G)
    assert order.order[:t] == G.apexes
    assert order.order[-1] == G.root
    pos = order.position
    for kids in G.children.values():
        if kids:
            spots = sorted(pos[c] for c in kids)
            assert spots == list(range(spots[0], spots[0] + len(kids)))
            assert [G.code[c] for c in sorted(kids, key=pos.get)] == sorted(G.code[c] for c in kids)


@pytest.mark.parametrize("t, depth", list(itertools.product([1, 2, 3], [1, 2, 3, 4])))
def test_gt_order_tree_matrix_has_short_decreasing_chains(t, depth):
    G = build_gt(GtParams(t, depth))
    M = adjacency_matrix(G.graph, gt_order(G))
    M_T = delete_rows_cols(M, range(t), range(t))
    assert longest_decreasing_chain(M_T) <= 2
    # both triangle conventions hold for this layout
    assert longest_decreasing_chain(M_T, "upper") <= 1
    assert longest_decreasing_chain(M_T, "lower") <= 1


def test_vertex_order_validation():
    with pytest.raises(ValueError):
        VertexOrder((0, 0, 1))
    assert VertexOrder.identity(3).position == {0: 0, 1: 1, 2: 2}
