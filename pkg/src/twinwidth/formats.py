"""Text formats for graphs, sequences, orders and matrices, plus DOT export.

All formats use 1-based vertex ids on disk; lines starting with ``#`` are
comments.  Graph files may carry a ``# labels: ...`` comment, which readers
that ignore comments can safely skip.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from twinwidth.core import Graph
from twinwidth.matrix import OrderedMatrix
from twinwidth.sequences import (
    ContractionSequence,
    ContractionStep,
    SequenceError,
    parts_by_vertex,
    replay,
    replay_oriented,
)
from twinwidth.witnesses import VertexOrder


class FormatError(ValueError):
    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield no, s.split()


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def detect_kind(text: str) -> str:
    """First record letter of a file: ``g``, ``seq``, ``o`` or ``m``."""
    for _, tok in _lines(text):
        return tok[0]
    raise FormatError("empty input")


def write_graph(G: Graph) -> str:
    out = []
    if G.labels is not None:
        out.append("# labels: " + " ".join(G.labels))
    out.append(f"g {G.n} {G.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in sorted(G.edges))
    return "\n".join(out) + "\n"


def read_graph(text: str) -> Graph:
    labels = None
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("# labels:"):
            labels = s[len("# labels:"):].split()
    header = None
    edges = []
    for no, tok in _lines(text):
        if tok[0] == "g":
            if header is not None:
                raise FormatError("duplicate header", no)
            if len(tok) != 3:
                raise FormatError("header must be 'g <n> <m>'", no)
            header = _ints(tok[1:], no)
        elif tok[0] == "e":
            if header is None:
                raise FormatError("edge before header", no)
            if len(tok) != 3:
                raise FormatError("edge line must be 'e <u> <v>'", no)
            u, v = _ints(tok[1:], no)
            if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                raise FormatError(f"vertex id out of range 1..{header[0]}", no)
            if u == v:
                raise FormatError("self-loop", no)
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"unknown record {tok[0]!r}", no)
    if header is None:
        raise FormatError("missing 'g' header")
    n, m = header
    G = Graph.from_edges(n, edges)
    if G.m != m or len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)} ({G.m} distinct)")
    if labels is not None and len(labels) == n:
        G = Graph.from_edges(n, G.edges, labels)
    return G


def write_sequence(seq: ContractionSequence) -> str:
    out = [f"seq {seq.base.n}"]
    out.extend(f"c {u + 1} {v + 1} {w + 1}" for u, v, w in seq.steps)
    return "\n".join(out) + "\n"


def read_sequence(text: str, base: Graph, oriented: bool = False) -> ContractionSequence:
    """Parse a sequence over ``base``.

    Syntax problems raise :class:`FormatError`; a step whose new id is not
    ``n + i`` raises :class:`SequenceError` naming the step.
    """
    n = None
    steps = []
    for no, tok in _lines(text):
        if tok[0] == "seq":
            if n is not None:
                raise FormatError("duplicate header", no)
            if len(tok) != 2:
                raise FormatError("header must be 'seq <n>'", no)
            (n,) = _ints(tok[1:], no)
            if n != base.n:
                raise FormatError(f"sequence is for {n} vertices, graph has {base.n}", no)
        elif tok[0] == "c":
            if n is None:
                raise FormatError("step before header", no)
            if len(tok) != 4:
                raise FormatError("step line must be 'c <u> <v> <w>'", no)
            u, v, w = _ints(tok[1:], no)
            i = len(steps) + 1
            if w != n + i:
                raise SequenceError(f"step {i}: new vertex must be {n + i}, got {w}",
                                    step=i, vertex=w - 1)
            steps.append(ContractionStep(u - 1, v - 1, w - 1))
        else:
            raise FormatError(f"unknown record {tok[0]!r}", no)
    if n is None:
        raise FormatError("missing 'seq' header")
    return ContractionSequence(base, tuple(steps), oriented)


def write_order(order: VertexOrder) -> str:
    return "o " + " ".join(str(v + 1) for v in order.order) + "\n"


def read_order(text: str) -> VertexOrder:
    for no, tok in _lines(text):
        if tok[0] != "o":
            raise FormatError(f"unknown record {tok[0]!r}", no)
        try:
            return VertexOrder(tuple(v - 1 for v in _ints(tok[1:], no)))
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(str(exc), no) from None
    raise FormatError("missing 'o' line")


def write_matrix(M: OrderedMatrix) -> str:
    return "\n".join([f"m {M.rows} {M.cols}", *M.to_strings()]) + "\n"


def read_matrix(text: str) -> OrderedMatrix:
    header = None
    rows = []
    for no, tok in _lines(text):
        if header is None:
            if tok[0] != "m" or len(tok) != 3:
                raise FormatError("header must be 'm <rows> <cols>'", no)
            header = _ints(tok[1:], no)
            continue
        if len(tok) != 1 or set(tok[0]) - {"0", "1"}:
            raise FormatError("matrix rows are strings of 0 and 1", no)
        if len(tok[0]) != header[1]:
            raise FormatError(f"row has {len(tok[0])} entries, expected {header[1]}", no)
        rows.append(tok[0])
    if header is None:
        raise FormatError("missing 'm' header")
    if len(rows) != header[0]:
        raise FormatError(f"expected {header[0]} rows, found {len(rows)}")
    return OrderedMatrix.from_strings(rows)


def _quote(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def _part_label(G: Graph, part: Iterable[int]) -> str:
    names = sorted(G.label(v) for v in part)
    if G.labels is not None and all(len(x) == 1 for x in names):
        return "".join(names)
    return ",".join(names)


def to_dot(seq: ContractionSequence, frames: Iterable[int] | None = None,
           oriented: bool = False) -> str:
    """One DOT graph per requested frame (0 = the input graph), red edges styled red.

    Frame ``i`` is the trigraph after ``i`` steps; nodes are labelled by the
    original vertices they contain.
    """
    snapshots = list(replay_oriented(seq) if oriented else replay(seq))
    parts = list(parts_by_vertex(seq))
    wanted = range(len(snapshots)) if frames is None else list(frames)
    out = []
    for i in wanted:
        if not 0 <= i < len(snapshots):
            raise SequenceError(f"frame {i} out of range 0..{len(snapshots) - 1}", step=i)
        T = snapshots[i]
        kind, sep = ("digraph", "->") if oriented else ("graph", "--")
        out.append(f"{kind} frame_{i} {{")
        names = {v: _part_label(seq.base, parts[i][v]) for v in sorted(T.vertices)}
        for v in sorted(T.vertices):
            out.append(f"  {_quote(names[v])};")
        for u, v in sorted(T.black_edges):
            attr = ' [color=black, dir=none]' if oriented else ' [color=black]'
            out.append(f"  {_quote(names[u])} {sep} {_quote(names[v])}{attr};")
        red = sorted(T.red_arcs) if oriented else sorted(T.red_edges)
        for u, v in red:
            out.append(f"  {_quote(names[u])} {sep} {_quote(names[v])} [color=red, penwidth=2];")
        out.append("}")
    return "\n".join(out) + "\n"
