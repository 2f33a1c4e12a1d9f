"""Graph families: the apex-over-tree construction G_t, Paley graphs, the
Figure-1 example, trees and random graphs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from twinwidth.core import Graph
from twinwidth.sequences import ContractionSequence, ContractionStep

DEFAULT_GT_CAP = 100_000
# f(t) is expanded to an exact integer only up to this many bits
MAX_EXACT_BITS = 1 << 16


class GtSizeError(ValueError):
    pass


@dataclass(frozen=True)
class GtParams:
    t: int
    depth: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("t must be at least 1")
        if self.depth < 1:
            raise ValueError("depth must be at least 1")

    @property
    def arity(self) -> int:
        return 2 ** self.t

    @property
    def tree_size(self) -> int:
        a = self.arity
        return (a ** (self.depth + 1) - 1) // (a - 1)

    @property
    def vertex_count(self) -> int:
        return self.t + self.tree_size


@dataclass(frozen=True)
class GtGraph:
    """A depth-truncated instance of the construction.

    Apexes are vertices ``0..t-1``; tree nodes follow in breadth-first order
    starting with the root.  ``code[v]`` is the neighbourhood of tree node
    ``v`` in the apex set, as a bitmask over apex indices.
    """

    params: GtParams
    graph: Graph
    apexes: tuple[int, ...]
    layers: tuple[tuple[int, ...], ...]
    code: dict[int, int]
    parent: dict[int, int]
    children: dict[int, tuple[int, ...]]

    @property
    def root(self) -> int:
        return self.layers[0][0]

    @property
    def tree_nodes(self) -> tuple[int, ...]:
        return tuple(v for layer in self.layers for v in layer)

    def tree(self) -> Graph:
        """The tree part, relabelled to ``0..|T|-1`` in the same breadth-first order."""
        return self.graph.induced(self.tree_nodes)


def build_gt(params: GtParams, max_vertices: int = DEFAULT_GT_CAP,
             shuffle_seed: int | None = None) -> GtGraph:
    """Build X plus the full 2^t-ary tree of the given depth.

    The children of every internal node receive the neighbourhood codes
    ``0..2^t-1`` in child order; with ``shuffle_seed`` each sibling group gets
    an independently shuffled assignment instead (isomorphic result).
    """
    if params.vertex_count > max_vertices:
        raise GtSizeError(f"G_t with t={params.t}, depth={params.depth} has "
                          f"{params.vertex_count} vertices, above the cap of {max_vertices}")
    t, a = params.t, params.arity
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    apexes = tuple(range(t))
    root = t
    layers = [(root,)]
    code = {root: 0}
    parent: dict[int, int] = {}
    children: dict[int, tuple[int, ...]] = {}
    edges: list[tuple[int, int]] = []
    nxt = t + 1
    for _ in range(params.depth):
        layer = []
        for p in layers[-1]:
            codes = list(range(a))
            if rng is not None:
                rng.shuffle(codes)
            kids = tuple(range(nxt, nxt + a))
            nxt += a
            children[p] = kids
            for c, s in zip(kids, codes):
                parent[c] = p
                code[c] = s
                edges.append((p, c))
                edges.extend((x, c) for x in apexes if s >> x & 1)
            layer.extend(kids)
        layers.append(tuple(layer))
    for v in layers[-1]:
        children[v] = ()
    labels = [f"x{i + 1}" for i in apexes] + [f"n{v - t}" for v in range(t, nxt)]
    graph = Graph.from_edges(nxt, edges, labels)
    return GtGraph(params, graph, apexes, tuple(layers), code, parent, children)


@dataclass(frozen=True)
class FValue:
    """Numerical report of the tree depth required by the lower-bound argument."""

    t: int
    eps: Fraction
    c_t: mpmath.mpf
    exponent: mpmath.mpf
    exponent_expr: str
    log2_expr: str
    log2_f: mpmath.mpf
    value: int | None


def _as_fraction(eps) -> Fraction:
    if isinstance(eps, float):
        return Fraction(str(eps))
    return Fraction(eps)


def f_of_t(t: int, eps) -> FValue:
    """Evaluate ``f(t) = ceil(2 + C_t * 2^(a t (2 + C_t (2^(a t) + 1))))``, ``a = 1 - eps``,
    with ``C_t = 2^(a t) / eps``.

    The hypotheses ``0 < eps <= 1/2`` and ``t > 1/eps`` are checked exactly.
    ``value`` is the exact integer when ``f`` has at most ``MAX_EXACT_BITS``
    bits, else ``None``; the exponent and ``log2 f`` are mpmath floats at
    >= 96-bit precision.
    """
    eps = _as_fraction(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError(f"eps must satisfy 0 < eps <= 1/2, got {eps}")
    if t * eps <= 1:
        raise ValueError(f"t must exceed 1/eps = {1 / eps}, got t = {t}")
    a = (1 - eps) * t
    expr = f"({a})*(2 + 2^({a})/({eps})*(2^({a}) + 1))"
    log2_expr = f"log2(2 + 2^({a})/({eps}) * 2^E), E = {expr}"
    with mpmath.workprec(96):
        pa = mpmath.power(2, mpmath.mpf(a.numerator) / a.denominator)
        e = mpmath.mpf(eps.numerator) / eps.denominator
        c_t = pa / e
        exponent = (mpmath.mpf(a.numerator) / a.denominator) * (2 + c_t * (pa + 1))
        log2_f = mpmath.log(c_t, 2) + exponent
    value = None
    if log2_f <= MAX_EXACT_BITS:
        with mpmath.workprec(int(log2_f) + 128):
            pa = mpmath.power(2, mpmath.mpf(a.numerator) / a.denominator)
            e = mpmath.mpf(eps.numerator) / eps.denominator
            c = pa / e
            x = (mpmath.mpf(a.numerator) / a.denominator) * (2 + c * (pa + 1))
            value = int(mpmath.ceil(2 + c * mpmath.power(2, x)))
        with mpmath.workprec(96):
            log2_f = mpmath.log(value, 2)
    return FValue(t, eps, c_t, exponent, expr, log2_expr, log2_f, value)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


def build_paley(q: int) -> Graph:
    """Paley graph on Z_q: ``ij`` is an edge iff ``i - j`` is a nonzero square mod q."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q % 4 != 1:
        raise ValueError(f"{q} is not 1 mod 4")
    residues = {x * x % q for x in range(1, q)}
    edges = [(i, j) for i in range(q) for j in range(i + 1, q) if (j - i) % q in residues]
    return Graph.from_edges(q, edges)


_FIG1_LABELS = "abcdefg"
_FIG1_EDGES = ("ab", "ad", "af", "bc", "bd", "be", "bf", "ce", "cf", "de", "dg", "eg", "fg")


def fig1_graph() -> Graph:
    idx = {c: i for i, c in enumerate(_FIG1_LABELS)}
    return Graph.from_edges(7, [(idx[x], idx[y]) for x, y in _FIG1_EDGES], tuple(_FIG1_LABELS))


def fig1_sequence() -> ContractionSequence:
    """The six merges e.f, a.d, b.ef, ad.g, bef.c, adg.bcef (new ids 7..12)."""
    a, b, c, d, e, f, g = range(7)
    steps = [
        ContractionStep(e, f, 7),
        ContractionStep(a, d, 8),
        ContractionStep(b, 7, 9),
        ContractionStep(8, g, 10),
        ContractionStep(9, c, 11),
        ContractionStep(10, 11, 12),
    ]
    return ContractionSequence(fig1_graph(), tuple(steps))


def build_kary_tree(arity: int, depth: int) -> Graph:
    """Full ``arity``-ary tree of the given depth, nodes in breadth-first order."""
    if arity < 1 or depth < 0:
        raise ValueError("need arity >= 1 and depth >= 0")
    edges = []
    layer = [0]
    n = 1
    for _ in range(depth):
        nxt = []
        for p in layer:
            for _ in range(arity):
                edges.append((p, n))
                nxt.append(n)
                n += 1
        layer = nxt
    return Graph.from_edges(n, edges)


def random_tree(n: int, seed: int = 0) -> Graph:
    """Random recursive tree on ``n`` vertices with randomly permuted labels."""
    if n < 1:
        raise ValueError("a tree needs at least one vertex")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[v], perm[rng.randrange(v)]) for v in range(1, n)]
    return Graph.from_edges(n, edges)


def random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p)."""
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gt_violations(G: GtGraph) -> list[str]:
    """Check the defining properties of G_t from the edge set alone; empty list if all hold."""
    g, X = G.graph, set(G.apexes)
    problems = []
    if any(u in X and v in X for u, v in g.edges):
        problems.append("apex set is not independent")
    expected = build_kary_tree(G.params.arity, G.params.depth)
    if G.tree() != expected:
        problems.append("tree part is not the full 2^t-ary tree of the given depth")

    def apex_nbrs(v: int) -> frozenset[int]:
        return frozenset(x for x in X if g.has_edge(v, x))

    if apex_nbrs(G.root):
        problems.append("root has an apex neighbour")
    everything = {frozenset(s) for s in _subsets(sorted(X))}
    for p, kids in G.children.items():
        if not kids:
            continue
        seen = [apex_nbrs(c) for c in kids]
        if len(set(seen)) != len(seen):
            problems.append(f"children of {p} share an apex neighbourhood")
        elif set(seen) != everything:
            problems.append(f"children of {p} miss some apex subsets")
    if not g.induced(G.tree_nodes).is_forest():
        problems.append("removing the apexes leaves a cycle")
    return problems


def _subsets(items: list[int]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for x in items:
        out += [s + (x,) for s in out]
    return out
