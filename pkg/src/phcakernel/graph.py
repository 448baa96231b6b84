"""Immutable simple graphs with stable integer vertex identifiers.

Vertex identifiers survive every operation: an induced subgraph or a
vertex deletion keeps the identifiers of the parent graph, so the mapping
back to the parent is the identity and traces stay replayable.  Use
:meth:`Graph.relabeled` when a dense ``0..n-1`` numbering is required
(e.g. when writing an edge-list file).
"""
from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Mapping

__all__ = [
    "Graph",
    "GraphInputError",
    "induced_subgraph",
    "connected_components",
    "neighborhood",
    "read_edge_list",
    "parse_edge_list",
    "format_edge_list",
    "write_edge_list",
]


class GraphInputError(ValueError):
    """Unknown vertex, malformed edge list, self-loop, ..."""


class Graph:
    """A finite simple undirected graph.

    Parameters
    ----------
    vertices : iterable of int
        Nonnegative vertex identifiers.  Endpoints of ``edges`` are added
        implicitly.
    edges : iterable of (int, int)
        Undirected edges; duplicates are merged, self-loops rejected.
    labels : mapping, optional
        Free-form per-vertex labels (e.g. back-references of copied
        vertices).  Labels of vertices not in the graph are dropped.
    """

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = (),
                 labels: Mapping[int, object] | None = None):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            v = int(v)
            if v < 0:
                raise GraphInputError(f"negative vertex identifier {v}")
            adj.setdefault(v, set())
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphInputError(f"self-loop at {u}")
            if u < 0 or v < 0:
                raise GraphInputError(f"negative vertex identifier in edge ({u}, {v})")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj = {v: frozenset(adj[v]) for v in sorted(adj)}
        self._vertices = tuple(self._adj)
        self.labels = {v: lab for v, lab in (labels or {}).items() if v in self._adj}

    @classmethod
    def _from_adj(cls, adj: dict[int, frozenset[int]], labels=None) -> "Graph":
        g = cls.__new__(cls)
        g._adj = {v: adj[v] for v in sorted(adj)}
        g._vertices = tuple(g._adj)
        g.labels = {v: lab for v, lab in (labels or {}).items() if v in g._adj}
        return g

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        """Vertex identifiers in increasing order."""
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @cached_property
    def m(self) -> int:
        return sum(len(s) for s in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self):
        return iter(self._vertices)

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphInputError(f"unknown vertex {v}") from None

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in self._vertices for v in sorted(self._adj[u]) if u < v]

    def adjacency(self) -> Mapping[int, frozenset[int]]:
        return self._adj

    @cached_property
    def max_id(self) -> int:
        return self._vertices[-1] if self._vertices else -1

    # -- derived graphs ----------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        keep = set(vertices)
        unknown = keep.difference(self._adj)
        if unknown:
            raise GraphInputError(f"unknown vertices {sorted(unknown)[:5]}")
        adj = {v: self._adj[v] & keep for v in keep}
        return Graph._from_adj(adj, self.labels)

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        unknown = drop.difference(self._adj)
        if unknown:
            raise GraphInputError(f"unknown vertices {sorted(unknown)[:5]}")
        if not drop:
            return self
        adj = {v: (nb - drop) if nb & drop else nb for v, nb in self._adj.items() if v not in drop}
        return Graph._from_adj(adj, self.labels)

    def add_vertices(self, new: Mapping[int, Iterable[int]], labels: Mapping[int, object] | None = None) -> "Graph":
        """Return a graph with fresh vertices; ``new[v]`` lists v's neighbours.

        Neighbours may be existing vertices or other new vertices.
        """
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for v in new:
            if v in self._adj:
                raise GraphInputError(f"vertex {v} already present")
            adj[v] = set()
        for v, nbrs in new.items():
            for u in nbrs:
                if u == v:
                    raise GraphInputError(f"self-loop at {v}")
                if u not in adj:
                    raise GraphInputError(f"unknown vertex {u}")
                adj[v].add(u)
                adj[u].add(v)
        merged = dict(self.labels)
        merged.update(labels or {})
        return Graph._from_adj({v: frozenset(s) for v, s in adj.items()}, merged)

    def relabeled(self) -> tuple["Graph", dict[int, int]]:
        """Dense copy on ``0..n-1`` plus the map new id -> old id."""
        index = {v: i for i, v in enumerate(self._vertices)}
        g = Graph(range(self.n), ((index[u], index[v]) for u, v in self.edges()))
        return g, {i: v for v, i in index.items()}

    def complement(self) -> "Graph":
        vs = set(self._vertices)
        return Graph._from_adj({v: frozenset(vs - self._adj[v] - {v}) for v in vs})

    # -- value semantics ---------------------------------------------

    @cached_property
    def _key(self):
        return (self._vertices, tuple(self.edges()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @cached_property
    def dense(self):
        """Index-space view consumed by the compiled kernels."""
        from ._kernels import DenseGraph
        return DenseGraph(self)


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    return G.induced_subgraph(S)


def neighborhood(G: Graph, v: int) -> frozenset[int]:
    return G.neighbors(v)


def connected_components(G: Graph) -> list[frozenset[int]]:
    """Components ordered by their smallest vertex."""
    seen: set[int] = set()
    out = []
    adj = G.adjacency()
    for s in G.vertices:
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


# -- edge-list text format -------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (0-based).

    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphInputError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1]), lineno))
        except ValueError:
            raise GraphInputError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise GraphInputError("missing 'n m' header")
    n, m, _ = rows[0]
    if n < 0 or m < 0:
        raise GraphInputError("negative header values")
    if len(rows) - 1 != m:
        raise GraphInputError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for u, v, lineno in rows[1:]:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"line {lineno}: vertex out of range 0..{n - 1}")
        edges.append((u, v))
    return Graph(range(n), edges)


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def format_edge_list(G: Graph) -> str:
    """Serialize; vertices are renumbered densely in increasing-id order."""
    dense, _ = G.relabeled()
    lines = [f"{dense.n} {dense.m}"]
    lines.extend(f"{u} {v}" for u, v in dense.edges())
    return "\n".join(lines) + "\n"


def write_edge_list(G: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(G))
