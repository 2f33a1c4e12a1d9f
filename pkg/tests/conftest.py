from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from twinwidth.core import Graph
from twinwidth.generators import random_graph

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_merges(draw, min_n: int = 1, max_n: int = 9):
    """A graph plus a (possibly partial) list of merges given as picks among current vertices."""
    G = draw(graphs(min_n, max_n))
    k = draw(st.integers(0, max(G.n - 1, 0)))
    picks = [draw(st.tuples(st.integers(0, 10**6), st.integers(0, 10**6))) for _ in range(k)]
    return G, picks


def sample_graphs(count: int, sizes: range, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.choice(sizes)
        p = rng.uniform(0.15, 0.85)
        out.append(random_graph(n, p, seed=seed * 100_003 + i))
    return out


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
