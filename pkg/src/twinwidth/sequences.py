"""Contraction sequences: representation, replay and width measurement."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from twinwidth.core import (
    DiTrigraph,
    Graph,
    Partition,
    Trigraph,
    TrigraphError,
    contract,
    contract_oriented,
)


class SequenceError(ValueError):
    """A step cannot be replayed, or a full sequence does not end at one vertex.

    ``step`` is 1-based (0 when the problem is not tied to a single step).
    """

    def __init__(self, message: str, step: int = 0, vertex: int | None = None) -> None:
        super().__init__(message)
        self.step = step
        self.vertex = vertex


class ContractionStep(NamedTuple):
    u: int
    v: int
    w: int


@dataclass(frozen=True)
class ContractionSequence:
    """Ordered merges over ``base``; may stop before reaching a single vertex."""

    base: Graph
    steps: tuple[ContractionStep, ...] = ()
    oriented: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(ContractionStep(*s) for s in self.steps))

    @classmethod
    def from_pairs(cls, base: Graph, pairs: Iterable[tuple[int, int]],
                   oriented: bool = False) -> ContractionSequence:
        """Build a sequence whose ``i``-th merge (0-based) creates vertex ``n + i``."""
        steps = [ContractionStep(u, v, base.n + i) for i, (u, v) in enumerate(pairs)]
        return cls(base, tuple(steps), oriented)

    @property
    def is_full(self) -> bool:
        return len(self.steps) == max(self.base.n - 1, 0)

    def prefix(self, k: int) -> ContractionSequence:
        return ContractionSequence(self.base, self.steps[:k], self.oriented)

    def __len__(self) -> int:
        return len(self.steps)


class StepRecord(NamedTuple):
    """Largest (out-)red degree right after step ``index``; index 0 is the base graph."""

    index: int
    max_red_degree: int
    vertex: int | None


@dataclass(frozen=True)
class WidthReport:
    width: int
    per_step: tuple[StepRecord, ...]
    partial: bool
    oriented: bool = False

    def first_exceeding(self, d: int) -> StepRecord | None:
        for rec in self.per_step:
            if rec.max_red_degree > d:
                return rec
        return None


def _worst(rows: dict[int, int]) -> tuple[int, int | None]:
    best, arg = 0, None
    for v, row in rows.items():
        c = row.bit_count()
        if c > best:
            best, arg = c, v
    return best, arg


def replay(seq: ContractionSequence) -> Iterator[Trigraph]:
    """Yield the base trigraph and then the trigraph after every step."""
    T = Trigraph.from_graph(seq.base)
    yield T
    seen = set(T.vertices)
    for i, (u, v, w) in enumerate(seq.steps, start=1):
        if w in seen:
            raise SequenceError(f"step {i}: vertex id {w} was used before", step=i, vertex=w)
        try:
            T = contract(T, u, v, w)
        except TrigraphError as exc:
            bad = next((x for x in (u, v) if x not in T), None)
            raise SequenceError(f"step {i}: {exc}", step=i, vertex=bad) from exc
        seen.add(w)
        yield T


def replay_oriented(seq: ContractionSequence) -> Iterator[DiTrigraph]:
    D = DiTrigraph.from_graph(seq.base)
    yield D
    seen = set(D.vertices)
    for i, (u, v, w) in enumerate(seq.steps, start=1):
        if w in seen:
            raise SequenceError(f"step {i}: vertex id {w} was used before", step=i, vertex=w)
        try:
            D = contract_oriented(D, u, v, w)
        except TrigraphError as exc:
            bad = next((x for x in (u, v) if x not in D), None)
            raise SequenceError(f"step {i}: {exc}", step=i, vertex=bad) from exc
        seen.add(w)
        yield D


def _report(frames, rows_of, full: bool, oriented: bool) -> WidthReport:
    records = []
    last = None
    for i, frame in enumerate(frames):
        best, arg = _worst(rows_of(frame))
        records.append(StepRecord(i, best, arg))
        last = frame
    partial = last is not None and len(last) > 1
    if full and partial:
        raise SequenceError(f"sequence ends with {len(last)} vertices, not a single one",
                            step=len(records) - 1)
    width = max(r.max_red_degree for r in records)
    return WidthReport(width, tuple(records), partial, oriented)


def verify(seq: ContractionSequence, full: bool = False) -> WidthReport:
    """Replay ``seq`` and report the largest red degree of any intermediate trigraph.

    With ``full=True`` a sequence that does not end at a single vertex is an
    error; otherwise it is reported with ``partial=True``.
    """
    return _report(replay(seq), lambda T: T._red, full, oriented=False)


def verify_oriented(seq: ContractionSequence, full: bool = False) -> WidthReport:
    """As :func:`verify`, counting only out-going red arcs."""
    return _report(replay_oriented(seq), lambda D: D._out, full, oriented=True)


def parts_by_vertex(seq: ContractionSequence) -> Iterator[dict[int, frozenset[int]]]:
    """For each frame of the replay, map every current vertex to its set of original vertices."""
    current = {v: frozenset((v,)) for v in range(seq.base.n)}
    yield dict(current)
    for i, (u, v, w) in enumerate(seq.steps, start=1):
        if u == v or u not in current or v not in current or w in current:
            raise SequenceError(f"step {i}: invalid merge ({u}, {v}) -> {w}", step=i)
        current[w] = current.pop(u) | current.pop(v)
        yield dict(current)


def partition_trace(seq: ContractionSequence) -> list[Partition]:
    """Partitions of the base vertex set, starting from the singletons."""
    return [Partition(tuple(parts.values()), seq.base.n) for parts in parts_by_vertex(seq)]
