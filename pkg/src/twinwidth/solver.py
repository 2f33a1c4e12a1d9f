"""Exact and heuristic twin-width.

The exact solvers run iterative deepening on the width bound ``d``: a
depth-first search over merges that discards any state with a vertex of
(out-going) red degree above ``d``, memoising refuted states per ``d``.  A
state is the partition of the original vertices (plus the red arc directions
in the oriented case), each part a bitmask.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from twinwidth.core import Graph, Trigraph, bits, contract
from twinwidth.sequences import ContractionSequence, ContractionStep, verify, verify_oriented

ENUMERATION_LIMIT = 7


@dataclass(frozen=True)
class SolverConfig:
    max_width_probe: int = 64
    node_budget: int = 5_000_000
    memo_capacity: int = 2_000_000

    def __post_init__(self) -> None:
        if min(self.max_width_probe, self.node_budget, self.memo_capacity) <= 0:
            raise ValueError("solver limits must be positive")


@dataclass(frozen=True)
class SolveResult:
    """``value`` is the width of ``witness``; it equals the twin-width when ``exact``.

    When not exact, the true value lies in ``[lower_bound, upper_bound]``.
    """

    value: int
    witness: ContractionSequence
    explored: int
    exact: bool
    lower_bound: int = 0
    upper_bound: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.upper_bound < 0:
            object.__setattr__(self, "upper_bound", self.value)


class _BudgetExhausted(Exception):
    pass


def _relation(adj_any: int, adj_all: int, q: int) -> int:
    if not q & adj_any:
        return 0
    if q & adj_all == q:
        return 1
    return 2


class _PartitionState:
    """Helpers over a graph's adjacency for bitmask parts."""

    def __init__(self, G: Graph) -> None:
        self.adj = G.adjacency
        self.n = G.n

    def nbr(self, p: int) -> tuple[int, int]:
        any_n, all_n = 0, -1
        for v in bits(p):
            any_n |= self.adj[v]
            all_n &= self.adj[v]
        return any_n, all_n

    def red_sets(self, parts: tuple[int, ...]) -> list[int]:
        """For each part, the bitmask of indices of red-adjacent parts."""
        k = len(parts)
        nb = [self.nbr(p) for p in parts]
        red = [0] * k
        for i in range(k):
            a, b = nb[i]
            for j in range(i + 1, k):
                if _relation(a, b, parts[j]) == 2:
                    red[i] |= 1 << j
                    red[j] |= 1 << i
        return red


def _steps_from_merges(G: Graph, merges: list[tuple[int, int]]) -> ContractionSequence:
    """Turn merges of part masks into a sequence over trigraph ids."""
    ids = {1 << v: v for v in range(G.n)}
    steps = []
    nxt = G.n
    for p, q in merges:
        steps.append(ContractionStep(ids.pop(p), ids.pop(q), nxt))
        ids[p | q] = nxt
        nxt += 1
    return ContractionSequence(G, tuple(steps))


def _finish(parts: tuple[int, ...]) -> list[tuple[int, int]]:
    merges = []
    acc = parts[0]
    for p in parts[1:]:
        merges.append((acc, p))
        acc |= p
    return merges


class _PlainSearch:
    def __init__(self, G: Graph, cfg: SolverConfig) -> None:
        self.G = G
        self.cfg = cfg
        self.st = _PartitionState(G)
        self.explored = 0

    def run(self, d: int) -> list[tuple[int, int]] | None:
        self.d = d
        self.failed: set[tuple[int, ...]] = set()
        start = tuple(1 << v for v in range(self.G.n))
        return self._dfs(start)

    def _dfs(self, parts: tuple[int, ...]) -> list[tuple[int, int]] | None:
        d = self.d
        if len(parts) <= d + 1:
            # red degree is below the number of other vertices
            return _finish(parts)
        if parts in self.failed:
            return None
        self.explored += 1
        if self.explored > self.cfg.node_budget:
            raise _BudgetExhausted
        candidates = []
        k = len(parts)
        for i in range(k):
            for j in range(i + 1, k):
                merged = parts[i] | parts[j]
                rest = parts[:i] + parts[i + 1:j] + parts[j + 1:]
                new = tuple(sorted((*rest, merged), key=lambda m: m & -m))
                red = self.st.red_sets(new)
                worst = max(r.bit_count() for r in red)
                if worst > d:
                    continue
                mi = new.index(merged)
                candidates.append((red[mi].bit_count(), i, j, new))
        candidates.sort(key=lambda c: c[:3])
        for _, i, j, new in candidates:
            found = self._dfs(new)
            if found is not None:
                return [(parts[i], parts[j]), *found]
        if len(self.failed) < self.cfg.memo_capacity:
            self.failed.add(parts)
        return None


class _OrientedSearch:
    """State: sorted parts plus the set of red arcs as (source part, target part)."""

    def __init__(self, G: Graph, cfg: SolverConfig) -> None:
        self.G = G
        self.cfg = cfg
        self.st = _PartitionState(G)
        self.explored = 0

    def run(self, d: int) -> list[tuple[int, int]] | None:
        self.d = d
        self.failed: set = set()
        start = tuple(1 << v for v in range(self.G.n))
        return self._dfs(start, frozenset())

    def _merge(self, parts, arcs, p, q):
        merged = p | q
        rest = [r for r in parts if r != p and r != q]
        new_arcs = {(a, b) for a, b in arcs if a not in (p, q) and b not in (p, q)}
        any_n, all_n = self.st.nbr(merged)
        for z in rest:
            if _relation(any_n, all_n, z) != 2:
                continue
            if (z, p) in arcs and (z, q) in arcs:
                new_arcs.add((z, merged))
            else:
                new_arcs.add((merged, z))
        new = tuple(sorted((*rest, merged), key=lambda m: m & -m))
        return new, frozenset(new_arcs)

    def _dfs(self, parts, arcs) -> list[tuple[int, int]] | None:
        d = self.d
        if len(parts) <= d + 1:
            return _finish(parts)
        key = (parts, arcs)
        if key in self.failed:
            return None
        self.explored += 1
        if self.explored > self.cfg.node_budget:
            raise _BudgetExhausted
        candidates = []
        for p, q in itertools.combinations(parts, 2):
            new, new_arcs = self._merge(parts, arcs, p, q)
            out: dict[int, int] = {}
            for a, _ in new_arcs:
                out[a] = out.get(a, 0) + 1
            worst = max(out.values(), default=0)
            if worst > d:
                continue
            candidates.append((out.get(p | q, 0), parts.index(p), parts.index(q), p, q, new, new_arcs))
        candidates.sort(key=lambda c: c[:3])
        for *_, p, q, new, new_arcs in candidates:
            found = self._dfs(new, new_arcs)
            if found is not None:
                return [(p, q), *found]
        if len(self.failed) < self.cfg.memo_capacity:
            self.failed.add(key)
        return None


def _solve(G: Graph, cfg: SolverConfig | None, oriented: bool) -> SolveResult:
    if G.n < 1:
        raise ValueError("graph must have at least one vertex")
    cfg = cfg or SolverConfig()
    check = verify_oriented if oriented else verify
    greedy = greedy_upper_bound(G)
    upper = check(greedy.witness, full=True).width
    best = ContractionSequence(G, greedy.witness.steps, oriented)
    search = (_OrientedSearch if oriented else _PlainSearch)(G, cfg)
    lower = 0
    for d in range(0, upper):
        if d > cfg.max_width_probe:
            return SolveResult(upper, best, search.explored, False, lower, upper)
        try:
            merges = search.run(d)
        except _BudgetExhausted:
            return SolveResult(upper, best, search.explored, False, lower, upper)
        if merges is not None:
            seq = _steps_from_merges(G, merges)
            seq = ContractionSequence(G, seq.steps, oriented)
            width = check(seq, full=True).width
            assert width <= d, "search produced a sequence wider than its bound"
            return SolveResult(width, seq, search.explored, True, width, width)
        lower = d + 1
    return SolveResult(upper, best, search.explored, True, upper, upper)


def exact_twinwidth(G: Graph, cfg: SolverConfig | None = None) -> SolveResult:
    """Twin-width by iterative deepening; inexact results carry a bound interval."""
    return _solve(G, cfg, oriented=False)


def exact_oriented_twinwidth(G: Graph, cfg: SolverConfig | None = None) -> SolveResult:
    return _solve(G, cfg, oriented=True)


def greedy_upper_bound(G: Graph) -> SolveResult:
    """Repeatedly merge the pair giving the smallest resulting maximum red degree.

    Ties go to the lexicographically smallest pair of ids.  For trees the
    dedicated tree sequence is also tried and the better of the two kept.
    """
    if G.n < 1:
        raise ValueError("graph must have at least one vertex")
    black = dict(enumerate(G.adjacency))
    red = dict.fromkeys(range(G.n), 0)
    steps = []
    nxt = G.n
    while len(black) > 1:
        verts = sorted(black)
        deg = {z: red[z].bit_count() for z in verts}
        best = None
        for a, u in enumerate(verts):
            for v in verts[a + 1:]:
                drop = ~((1 << u) | (1 << v))
                bu, bv = black[u] & drop, black[v] & drop
                touched = (bu | bv | red[u] | red[v]) & drop
                new_red = touched & ~(bu & bv)
                worst = new_red.bit_count()
                for z in verts:
                    if z == u or z == v:
                        continue
                    dz = deg[z] - (red[z] >> u & 1) - (red[z] >> v & 1) + (new_red >> z & 1)
                    if dz > worst:
                        worst = dz
                if best is None or worst < best[0]:
                    best = (worst, u, v)
        _, u, v = best
        T = contract(Trigraph._from_rows(black, red), u, v, nxt)
        black, red = T._black, T._red
        steps.append(ContractionStep(u, v, nxt))
        nxt += 1
    seq = ContractionSequence(G, tuple(steps))
    width = verify(seq, full=True).width
    if width > 2 and G.is_tree():
        from twinwidth.witnesses import tree_sequence

        alt = tree_sequence(G)
        alt_width = verify(alt, full=True).width
        if alt_width < width:
            seq, width = alt, alt_width
    return SolveResult(width, seq, 0, False, 0, width)


def enumerate_all_sequences(G: Graph) -> int:
    """Minimum width over every full contraction sequence, by exhaustive replay.

    Independent of the exact solver: no memoisation, no pruning, and the
    trigraphs are produced by :func:`twinwidth.core.contract`.
    """
    if G.n > ENUMERATION_LIMIT:
        raise ValueError(f"exhaustive enumeration is limited to {ENUMERATION_LIMIT} vertices")
    if G.n < 1:
        raise ValueError("graph must have at least one vertex")

    def walk(T: Trigraph, so_far: int, nxt: int) -> int:
        if len(T) == 1:
            return so_far
        best = None
        for u, v in itertools.combinations(sorted(T.vertices), 2):
            S = contract(T, u, v, nxt)
            width = walk(S, max(so_far, S.max_red_degree()), nxt + 1)
            if best is None or width < best:
                best = width
        return best

    return walk(Trigraph.from_graph(G), 0, G.n)
