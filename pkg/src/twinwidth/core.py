"""Graphs, trigraphs, ditrigraphs and partitions, with exact contraction semantics.

Adjacency is stored as one integer bitmask per vertex (bit ``z`` set in the
row of ``v`` means ``vz`` is an edge of that colour).  All objects are treated
as immutable values: contractions return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence


class TrigraphError(ValueError):
    """Base class for malformed (di)trigraph input or contraction requests."""


class UnknownVertexError(TrigraphError):
    pass


class SameVertexError(TrigraphError):
    pass


class VertexExistsError(TrigraphError):
    pass


class PartitionError(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            norm.add(_pair(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError("need exactly one label per vertex")
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> Graph:
        return cls(n, frozenset(edges), tuple(labels) if labels is not None else None)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v + 1)

    def induced(self, keep: Iterable[int]) -> Graph:
        """Induced subgraph on ``keep``, relabelled to ``0..k-1`` in increasing order."""
        kept = sorted(set(keep))
        index = {v: i for i, v in enumerate(kept)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = tuple(self.label(v) for v in kept) if self.labels is not None else None
        return Graph.from_edges(len(kept), edges, labels)

    def remove_vertex(self, v: int) -> Graph:
        if not 0 <= v < self.n:
            raise UnknownVertexError(f"vertex {v} not in graph")
        return self.induced(u for u in range(self.n) if u != v)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adjacency[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def is_forest(self) -> bool:
        # acyclic iff every component with c vertices has c-1 edges
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()


class Trigraph:
    """Vertices with disjoint black and red edge sets."""

    __slots__ = ("_black", "_red")

    def __init__(self, vertices: Iterable[int],
                 black_edges: Iterable[tuple[int, int]] = (),
                 red_edges: Iterable[tuple[int, int]] = ()) -> None:
        black = {v: 0 for v in vertices}
        red = dict.fromkeys(black, 0)
        for rows, edges in ((black, black_edges), (red, red_edges)):
            for u, v in edges:
                if u == v:
                    raise TrigraphError(f"self-loop at vertex {u}")
                if u not in rows or v not in rows:
                    raise UnknownVertexError(f"edge ({u}, {v}) has an unknown endpoint")
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        for v in black:
            if black[v] & red[v]:
                raise TrigraphError(f"vertex {v} has an edge coloured both black and red")
        self._black = black
        self._red = red

    @classmethod
    def _from_rows(cls, black: dict[int, int], red: dict[int, int]) -> Trigraph:
        obj = cls.__new__(cls)
        obj._black = black
        obj._red = red
        return obj

    @classmethod
    def from_graph(cls, G: Graph) -> Trigraph:
        return cls._from_rows(dict(enumerate(G.adjacency)), dict.fromkeys(range(G.n), 0))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._black)

    def __len__(self) -> int:
        return len(self._black)

    def __contains__(self, v: object) -> bool:
        return v in self._black

    def black_mask(self, v: int) -> int:
        return self._black[v]

    def red_mask(self, v: int) -> int:
        return self._red[v]

    @property
    def black_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, row in self._black.items() for v in bits(row) if u < v)

    @property
    def red_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, row in self._red.items() for v in bits(row) if u < v)

    def red_degree(self, v: int) -> int:
        if v not in self._red:
            raise UnknownVertexError(f"vertex {v} not in trigraph")
        return self._red[v].bit_count()

    def max_red_degree(self) -> int:
        return max((row.bit_count() for row in self._red.values()), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trigraph):
            return NotImplemented
        return self._black == other._black and self._red == other._red

    def __hash__(self) -> int:
        return hash((frozenset(self._black.items()), frozenset(self._red.items())))

    def __repr__(self) -> str:
        return (f"Trigraph(vertices={sorted(self._black)}, black={sorted(self.black_edges)}, "
                f"red={sorted(self.red_edges)})")


class DiTrigraph:
    """Trigraph whose red edges carry an orientation (red arcs)."""

    __slots__ = ("_black", "_out", "_in")

    def __init__(self, vertices: Iterable[int],
                 black_edges: Iterable[tuple[int, int]] = (),
                 red_arcs: Iterable[tuple[int, int]] = ()) -> None:
        black = {v: 0 for v in vertices}
        out = dict.fromkeys(black, 0)
        inc = dict.fromkeys(black, 0)
        for u, v in black_edges:
            if u == v:
                raise TrigraphError(f"self-loop at vertex {u}")
            if u not in black or v not in black:
                raise UnknownVertexError(f"edge ({u}, {v}) has an unknown endpoint")
            black[u] |= 1 << v
            black[v] |= 1 << u
        for u, v in red_arcs:
            if u == v:
                raise TrigraphError(f"self-loop at vertex {u}")
            if u not in black or v not in black:
                raise UnknownVertexError(f"arc ({u}, {v}) has an unknown endpoint")
            if (out[u] | inc[u]) >> v & 1:
                raise TrigraphError(f"more than one arc between {u} and {v}")
            out[u] |= 1 << v
            inc[v] |= 1 << u
        for v in black:
            if black[v] & (out[v] | inc[v]):
                raise TrigraphError(f"vertex {v} has a pair coloured both black and red")
        self._black = black
        self._out = out
        self._in = inc

    @classmethod
    def _from_rows(cls, black: dict[int, int], out: dict[int, int],
                   inc: dict[int, int]) -> DiTrigraph:
        obj = cls.__new__(cls)
        obj._black = black
        obj._out = out
        obj._in = inc
        return obj

    @classmethod
    def from_graph(cls, G: Graph) -> DiTrigraph:
        zeros = dict.fromkeys(range(G.n), 0)
        return cls._from_rows(dict(enumerate(G.adjacency)), zeros, dict(zeros))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._black)

    def __len__(self) -> int:
        return len(self._black)

    def __contains__(self, v: object) -> bool:
        return v in self._black

    @property
    def black_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, row in self._black.items() for v in bits(row) if u < v)

    @property
    def red_arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, row in self._out.items() for v in bits(row))

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def out_red_degree(self, v: int) -> int:
        if v not in self._out:
            raise UnknownVertexError(f"vertex {v} not in ditrigraph")
        return self._out[v].bit_count()

    def max_out_red_degree(self) -> int:
        return max((row.bit_count() for row in self._out.values()), default=0)

    def underlying(self) -> Trigraph:
        red = {v: self._out[v] | self._in[v] for v in self._black}
        return Trigraph._from_rows(dict(self._black), red)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiTrigraph):
            return NotImplemented
        return self._black == other._black and self._out == other._out

    def __hash__(self) -> int:
        return hash((frozenset(self._black.items()), frozenset(self._out.items())))

    def __repr__(self) -> str:
        return (f"DiTrigraph(vertices={sorted(self._black)}, black={sorted(self.black_edges)}, "
                f"arcs={sorted(self.red_arcs)})")


def _check_contraction(rows: Mapping[int, int], u: int, v: int, w: int) -> None:
    if u == v:
        raise SameVertexError(f"cannot contract vertex {u} with itself")
    for x in (u, v):
        if x not in rows:
            raise UnknownVertexError(f"vertex {x} not present")
    if w in rows:
        raise VertexExistsError(f"fresh vertex id {w} is already present")
    if w < 0:
        raise TrigraphError("vertex ids must be non-negative")


def _merged_colours(black: Mapping[int, int], red: Mapping[int, int],
                    u: int, v: int) -> tuple[int, int]:
    """Black and red neighbourhoods (as masks) of the vertex replacing ``u`` and ``v``."""
    drop = ~((1 << u) | (1 << v))
    bu, bv = black[u] & drop, black[v] & drop
    touched = (bu | bv | red[u] | red[v]) & drop
    new_black = bu & bv
    return new_black, touched & ~new_black


def contract(T: Trigraph, u: int, v: int, w: int) -> Trigraph:
    """Merge ``u`` and ``v`` of ``T`` into the fresh vertex ``w``.

    ``wz`` is black iff ``uz`` and ``vz`` were both black, absent iff neither
    was an edge, and red otherwise.  Edges away from ``u``, ``v`` are kept.
    """
    _check_contraction(T._black, u, v, w)
    new_black, new_red = _merged_colours(T._black, T._red, u, v)
    drop = ~((1 << u) | (1 << v))
    wbit = 1 << w
    black: dict[int, int] = {}
    red: dict[int, int] = {}
    for z in T._black:
        if z == u or z == v:
            continue
        b = T._black[z] & drop
        r = T._red[z] & drop
        if new_black >> z & 1:
            b |= wbit
        elif new_red >> z & 1:
            r |= wbit
        black[z] = b
        red[z] = r
    black[w] = new_black
    red[w] = new_red
    return Trigraph._from_rows(black, red)


def contract_oriented(D: DiTrigraph, u: int, v: int, w: int) -> DiTrigraph:
    """Oriented contraction of ``u`` and ``v`` into ``w``.

    Colours follow :func:`contract`.  A red edge ``wz`` becomes the arc
    ``z -> w`` only when both ``z -> u`` and ``z -> v`` were red arcs; in every
    other case it is oriented ``w -> z``.
    """
    _check_contraction(D._black, u, v, w)
    red_rows = {u: D._out[u] | D._in[u], v: D._out[v] | D._in[v]}
    new_black, new_red = _merged_colours(D._black, red_rows, u, v)
    into_w = new_red & D._in[u] & D._in[v]
    out_of_w = new_red & ~into_w
    drop = ~((1 << u) | (1 << v))
    wbit = 1 << w
    black: dict[int, int] = {}
    out: dict[int, int] = {}
    inc: dict[int, int] = {}
    for z in D._black:
        if z == u or z == v:
            continue
        b = D._black[z] & drop
        o = D._out[z] & drop
        i = D._in[z] & drop
        if new_black >> z & 1:
            b |= wbit
        elif into_w >> z & 1:
            o |= wbit
        elif out_of_w >> z & 1:
            i |= wbit
        black[z] = b
        out[z] = o
        inc[z] = i
    black[w] = new_black
    out[w] = out_of_w
    inc[w] = into_w
    return DiTrigraph._from_rows(black, out, inc)


def red_degree(T: Trigraph, v: int) -> int:
    return T.red_degree(v)


def out_red_degree(D: DiTrigraph, v: int) -> int:
    return D.out_red_degree(v)


@dataclass(frozen=True, eq=False)
class Partition:
    """Partition of the vertices ``0..n-1`` of a ground graph.

    Parts are stored sorted by their smallest element, so the singleton
    partition has part ``i == {i}``.
    """

    parts: tuple[frozenset[int], ...]
    n: int

    def __post_init__(self) -> None:
        raw = [frozenset(p) for p in self.parts]
        if not all(raw):
            raise PartitionError("empty part")
        parts = tuple(sorted(raw, key=min))
        seen: set[int] = set()
        for p in parts:
            if seen & p:
                raise PartitionError(f"parts overlap on {sorted(seen & p)}")
            seen |= p
        if seen != set(range(self.n)):
            missing = set(range(self.n)) - seen
            extra = seen - set(range(self.n))
            raise PartitionError(f"parts do not cover the vertex set (missing {sorted(missing)}, "
                                 f"unknown {sorted(extra)})")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(tuple(frozenset((v,)) for v in range(n)), n)

    @classmethod
    def whole(cls, n: int) -> Partition:
        return cls((frozenset(range(n)),) if n else (), n)

    @cached_property
    def part_of(self) -> dict[int, int]:
        return {v: i for i, p in enumerate(self.parts) for v in p}

    def __len__(self) -> int:
        return len(self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and set(self.parts) == set(other.parts)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.parts)))

    def __repr__(self) -> str:
        return f"Partition({[sorted(p) for p in self.parts]})"


def part_relation(adjacency: Sequence[int], p: int, q: int) -> int:
    """Relation between disjoint vertex sets given as masks: 0 none, 1 black, 2 red."""
    any_nbr = 0
    all_nbr = -1
    for v in bits(p):
        any_nbr |= adjacency[v]
        all_nbr &= adjacency[v]
    if not q & any_nbr:
        return 0
    if q & all_nbr == q:
        return 1
    return 2


def quotient(G: Graph, P: Partition, ids: Sequence[int] | None = None) -> Trigraph:
    """Trigraph with one vertex per part of ``P``.

    Part ``i`` becomes vertex ``ids[i]`` (default ``i``).  Fully adjacent
    pairs of parts get a black edge, non-homogeneous pairs a red edge.
    """
    if P.n != G.n:
        raise PartitionError(f"partition is over {P.n} vertices, graph has {G.n}")
    ids = list(range(len(P))) if ids is None else list(ids)
    if len(ids) != len(P) or len(set(ids)) != len(ids):
        raise ValueError("need one distinct id per part")
    masks = [sum(1 << v for v in p) for p in P.parts]
    black = dict.fromkeys(ids, 0)
    red = dict.fromkeys(ids, 0)
    adj = G.adjacency
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            rel = part_relation(adj, masks[i], masks[j])
            if rel == 1:
                black[ids[i]] |= 1 << ids[j]
                black[ids[j]] |= 1 << ids[i]
            elif rel == 2:
                red[ids[i]] |= 1 << ids[j]
                red[ids[j]] |= 1 << ids[i]
    return Trigraph._from_rows(black, red)
