"""Constructive width certificates: tree sequences, the oriented sequence for
G_t, and the vertex order that keeps the grid number of G_t small."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from twinwidth.core import Graph
from twinwidth.generators import GtGraph
from twinwidth.sequences import ContractionSequence, ContractionStep


@dataclass(frozen=True)
class VertexOrder:
    """``order[i]`` is the vertex placed at position ``i``."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(self.order)
        if sorted(order) != list(range(len(order))):
            raise ValueError("order must be a permutation of 0..n-1")
        object.__setattr__(self, "order", order)

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    @classmethod
    def identity(cls, n: int) -> VertexOrder:
        return cls(tuple(range(n)))


class _Merger:
    """Hands out fresh ids ``n, n+1, ...`` and records the steps."""

    def __init__(self, n: int) -> None:
        self.next_id = n
        self.steps: list[ContractionStep] = []

    def merge(self, u: int, v: int) -> int:
        w = self.next_id
        self.next_id += 1
        self.steps.append(ContractionStep(u, v, w))
        return w


def _collapse_tree(children: Mapping[int, Sequence[int]], root: int, merger: _Merger) -> int:
    """Contract the subtree under ``root`` to one vertex; return its id.

    Post-order: each child subtree is collapsed and immediately merged into an
    accumulator for its parent, then the accumulator is merged into the parent.
    At any time a node has red edges to at most its accumulator and the child
    just collapsed, and every new red arc points from a merged vertex upwards
    (or to apexes outside the tree).
    """
    acc: dict[int, int | None] = {}
    stack: list[tuple[int, int | None, bool]] = [(root, None, False)]
    blob = root
    while stack:
        v, parent, done = stack.pop()
        if not done:
            acc[v] = None
            stack.append((v, parent, True))
            for c in reversed(children[v]):
                stack.append((c, v, False))
            continue
        a = acc.pop(v)
        r = v if a is None else merger.merge(v, a)
        if parent is None:
            blob = r
        else:
            # fold right away so the parent never sees two collapsed children
            pa = acc[parent]
            acc[parent] = r if pa is None else merger.merge(pa, r)
    return blob


def _rooted_children(G: Graph, root: int) -> dict[int, tuple[int, ...]]:
    children: dict[int, tuple[int, ...]] = {}
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            kids = tuple(u for u in G.neighbors(v) if u not in seen)
            seen.update(kids)
            children[v] = kids
            nxt.extend(kids)
        frontier = nxt
    return children


def tree_sequence(T: Graph, root: int = 0) -> ContractionSequence:
    """Full contraction sequence of a tree with red degree <= 2 and out-going red degree <= 1."""
    if not T.is_tree():
        raise ValueError("tree_sequence needs a connected acyclic graph")
    merger = _Merger(T.n)
    _collapse_tree(_rooted_children(T, root), root, merger)
    return ContractionSequence(T, tuple(merger.steps))


def gt_oriented_sequence(G: GtGraph) -> ContractionSequence:
    """Collapse the tree part as in :func:`tree_sequence`, leaving the apexes
    untouched, then merge the remaining ``t + 1`` vertices in increasing id order."""
    merger = _Merger(G.graph.n)
    blob = _collapse_tree(G.children, G.root, merger)
    rest = sorted([*G.apexes, blob])
    acc = rest[0]
    for v in rest[1:]:
        acc = merger.merge(acc, v)
    return ContractionSequence(G.graph, tuple(merger.steps), oriented=True)


def gt_order(G: GtGraph) -> VertexOrder:
    """Apexes first, then the tree layers from the leaves up to the root.

    Each layer runs left to right: by the position of the parent in its own
    layer, then by neighbourhood code among siblings.
    """
    pos: dict[int, int] = {G.root: 0}
    ordered_layers = [[G.root]]
    for layer in G.layers[1:]:
        row = sorted(layer, key=lambda c: (pos[G.parent[c]], G.code[c]))
        pos.update((c, i) for i, c in enumerate(row))
        ordered_layers.append(row)
    order = list(sorted(G.apexes))
    for row in reversed(ordered_layers):
        order.extend(row)
    return VertexOrder(tuple(order))


def order_from(vertices: Iterable[int]) -> VertexOrder:
    return VertexOrder(tuple(vertices))
