from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twinwidth.core import Graph, Partition, quotient
from twinwidth.generators import complete_graph, fig1_graph, fig1_sequence, path_graph
from twinwidth.sequences import (
    ContractionSequence,
    ContractionStep,
    SequenceError,
    partition_trace,
    verify,
    verify_oriented,
)

from conftest import graphs


@st.composite
def full_sequences(draw, max_n: int = 8):
    G = draw(graphs(1, max_n))
    alive = list(range(G.n))
    pairs = []
    for _ in range(G.n - 1):
        u, v = draw(st.lists(st.sampled_from(alive), min_size=2, max_size=2, unique=True))
        pairs.append((u, v))
        alive.remove(u)
        alive.remove(v)
        alive.append(G.n + len(pairs) - 1)
    return ContractionSequence.from_pairs(G, pairs)


def test_fig1_sequence_has_width_two():
    report = verify(fig1_sequence(), full=True)
    assert report.width == 2
    assert not report.partial
    assert [r.max_red_degree for r in report.per_step] == [0, 2, 2, 2, 1, 1, 0]


def test_fig1_oriented_not_above_plain():
    assert verify_oriented(fig1_sequence(), full=True).width <= 2


@pytest.mark.parametrize("n", [1, 2, 5, 7])
def test_complete_graph_any_order_width_zero(n):
    G = complete_graph(n)
    for perm in itertools.islice(itertools.permutations(range(n)), 20):
        pairs = []
        acc = perm[0]
        for i, v in enumerate(perm[1:]):
            pairs.append((acc, v))
            acc = n + i
        seq = ContractionSequence.from_pairs(G, pairs)
        assert verify(seq, full=True).width == 0
        assert verify_oriented(seq, full=True).width == 0


def test_p4_replay_matches_hand_quotients():
    # a-b-c-d; merge ab, then abc, then abcd
    seq = ContractionSequence.from_pairs(path_graph(4), [(0, 1), (4, 2), (5, 3)])
    report = verify(seq, full=True)
    # by hand: {a,b} is red to c only; {a,b,c} is red to d only
    assert [r.max_red_degree for r in report.per_step] == [0, 1, 1, 0]
    assert report.width == 1
    trace = partition_trace(seq)
    assert quotient(path_graph(4), trace[1]).red_edges == {(0, 1)}
    assert quotient(path_graph(4), trace[2]).red_edges == {(0, 1)}


def test_partition_trace_endpoints():
    G = fig1_graph()
    assert partition_trace(ContractionSequence(G)) == [Partition.singletons(7)]
    trace = partition_trace(fig1_sequence())
    assert trace[0] == Partition.singletons(7)
    assert trace[-1] == Partition.whole(7)
    expected = Partition(tuple(map(frozenset, [{0, 3}, {1, 4, 5}, {2}, {6}])), 7)
    assert trace[3] == expected


def test_partial_sequence_is_reported_not_rejected():
    seq = fig1_sequence().prefix(3)
    report = verify(seq)
    assert report.partial and report.width == 2
    with pytest.raises(SequenceError):
        verify(seq, full=True)


@pytest.mark.parametrize("steps, bad_step", [
    ([(4, 5, 7), (4, 0, 8)], 2),      # 4 was merged away
    ([(4, 5, 7), (0, 3, 7)], 2),      # fresh id reused
    ([(4, 4, 7)], 1),                 # same vertex
    ([(4, 99, 7)], 1),                # unknown vertex
])
def test_malformed_steps_name_the_step(steps, bad_step):
    seq = ContractionSequence(fig1_graph(), tuple(ContractionStep(*s) for s in steps))
    for check in (verify, verify_oriented):
        with pytest.raises(SequenceError) as info:
            check(seq)
        assert info.value.step == bad_step


@settings(max_examples=120, deadline=None)
@given(full_sequences())
def test_width_equals_partition_definition(seq):
    report = verify(seq, full=True)
    by_partitions = max(quotient(seq.base, P).max_red_degree() for P in partition_trace(seq))
    assert report.width == by_partitions


@settings(max_examples=120, deadline=None)
@given(full_sequences(), st.data())
def test_prefix_monotone(seq, data):
    k = data.draw(st.integers(0, len(seq)))
    assert verify(seq.prefix(k)).width <= verify(seq).width
    assert verify_oriented(seq.prefix(k)).width <= verify_oriented(seq).width


@settings(max_examples=120, deadline=None)
@given(full_sequences())
def test_oriented_width_at_most_plain(seq):
    assert verify_oriented(seq).width <= verify(seq).width


def test_width_report_invariants():
    report = verify(fig1_sequence())
    assert report.width == max(r.max_red_degree for r in report.per_step) >= 0
    assert report.first_exceeding(1).index == 1
    assert report.first_exceeding(2) is None


def test_empty_graph_sequence():
    report = verify(ContractionSequence(Graph(1)), full=True)
    assert report.width == 0 and not report.partial
