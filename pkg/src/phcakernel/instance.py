"""Kernelization instances and the replayable trace of graph edits."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Iterable

from .errors import NoInstance
from .graph import Graph
from .partition import partition_components


@dataclass(frozen=True)
class TraceEvent:
    """One step of the pipeline.

    ``deleted`` vertices are removed first, then each ``added`` vertex is
    inserted with the listed neighbours (which may include earlier added
    vertices).  Events with neither only record a decision.
    """
    rule: str
    k_before: int
    k_after: int
    deleted: tuple[int, ...] = ()
    added: tuple[tuple[int, tuple[int, ...]], ...] = ()
    params: dict[str, Any] = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "k_before": self.k_before,
            "k_after": self.k_after,
            "deleted": list(self.deleted),
            "added": [[v, list(nb)] for v, nb in self.added],
            "params": self.params,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TraceEvent":
        return cls(data["rule"], data["k_before"], data["k_after"], tuple(data["deleted"]),
                   tuple((v, tuple(nb)) for v, nb in data["added"]), data.get("params", {}))

    @property
    def edits_graph(self) -> bool:
        return bool(self.deleted or self.added)


def apply_event(G: Graph, ev: TraceEvent) -> Graph:
    if ev.deleted:
        G = G.remove_vertices(ev.deleted)
    if ev.added:
        G = G.add_vertices({v: nb for v, nb in ev.added})
    return G


def replay(G: Graph, k: int, events: Iterable[TraceEvent]) -> tuple[Graph, int]:
    for ev in events:
        if ev.k_before != k:
            raise ValueError(f"trace out of sync at {ev.rule}: budget {k}, event expects {ev.k_before}")
        G = apply_event(G, ev)
        k = ev.k_after
    return G, k


@dataclass(frozen=True)
class Instance:
    """A graph, a budget, and the modulator state built for it.

    ``next_id`` only grows, so vertices introduced by rules never reuse an
    identifier that appeared earlier in the run.
    """
    graph: Graph
    k: int
    next_id: int = 0
    bundle: Any = None  # ModulatorBundle once built
    partitions: tuple = ()  # CliquePartition per component of G - T
    guaranteed: bool = True  # the oracle's factor is proven

    @classmethod
    def start(cls, G: Graph, k: int, guaranteed: bool = True) -> "Instance":
        if k < 0:
            raise ValueError("budget must be nonnegative")
        return cls(G, k, G.max_id + 1, guaranteed=guaranteed)

    @property
    def T(self) -> frozenset[int]:
        return frozenset() if self.bundle is None else self.bundle.T

    def delete(self, vertices: Iterable[int], rule: str, decrement: int = 0,
               params: dict | None = None) -> tuple["Instance", TraceEvent]:
        """Remove vertices, lowering k by ``decrement``; NoInstance if k would go negative."""
        vs = tuple(sorted(set(vertices)))
        ev = TraceEvent(rule, self.k, self.k - decrement, vs, (), params or {})
        if self.k - decrement < 0:
            raise NoInstance(f"{rule} needs budget {decrement} but k={self.k}", [ev])
        return self._after(self.graph.remove_vertices(vs), self.k - decrement, self.next_id, vs), ev

    def edit(self, deleted: Iterable[int], added: dict[int, Iterable[int]], rule: str,
             params: dict | None = None) -> tuple["Instance", TraceEvent]:
        """Delete then add vertices (ids must come from ``fresh``); k unchanged."""
        vs = tuple(sorted(set(deleted)))
        adds = tuple((v, tuple(sorted(nb))) for v, nb in sorted(added.items()))
        ev = TraceEvent(rule, self.k, self.k, vs, adds, params or {})
        G = apply_event(self.graph, ev)
        nxt = max([self.next_id, *(v + 1 for v in added)])
        return self._after(G, self.k, nxt, vs), ev

    def _after(self, G: Graph, k: int, nxt: int, deleted) -> "Instance":
        bundle = None if self.bundle is None else self.bundle.without(deleted)
        parts = self.partitions
        if bundle is not None and parts:
            parts = tuple(partition_components(G.remove_vertices(bundle.T), parts))
        return replace(self, graph=G, k=k, next_id=nxt, bundle=bundle, partitions=parts)

    def with_partitions(self) -> "Instance":
        """Attach freshly built partitions of ``G - T``."""
        H = self.graph.remove_vertices(self.T)
        return replace(self, partitions=tuple(partition_components(H, self.partitions or None)))

    def fresh(self, count: int) -> list[int]:
        return list(range(self.next_id, self.next_id + count))
