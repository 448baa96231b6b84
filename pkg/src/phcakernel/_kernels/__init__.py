"""Kernel backend selection.

The compiled module ``_ckernels`` is used when it was built; otherwise the
pure-Python reference implementation is used.  Set ``PHCAKERNEL_PURE=1``
to force the fallback.
"""
from __future__ import annotations

import os
from functools import cached_property

import numpy as np

from . import _pykernels

_c = None
if os.environ.get("PHCAKERNEL_PURE", "") in ("", "0"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"

__all__ = ["BACKEND", "DenseGraph", "Pattern", "embeddings", "hole", "chordal", "use_backend"]


class Pattern:
    """A small connected pattern graph prepared for anchored search."""

    def __init__(self, name: str, size: int, edges):
        self.name = name
        self.size = size
        adj = [[False] * size for _ in range(size)]
        for u, v in edges:
            adj[u][v] = adj[v][u] = True
        self.adj = adj
        degree = [sum(row) for row in adj]
        # highest degree first, then grow along edges, ties by index
        order = [max(range(size), key=lambda v: (degree[v], -v))]
        while len(order) < size:
            frontier = [v for v in range(size) if v not in order and any(adj[v][u] for u in order)]
            order.append(max(frontier, key=lambda v: (sum(adj[v][u] for u in order), degree[v], -v)))
        self.order = order
        self.anchor = [-1] + [next(i for i, u in enumerate(order) if adj[v][u]) for v in order[1:]]
        self.req = [sum(1 << i for i in range(j) if adj[order[j]][order[i]]) for j in range(size)]
        self.pdeg = [degree[v] for v in order]
        reqm = np.zeros((size, size), dtype=np.uint8)
        for j in range(size):
            for i in range(j):
                reqm[j, i] = adj[order[j]][order[i]]
        self._c_args = (
            np.asarray(order, dtype=np.int32),
            np.asarray([max(a, 0) for a in self.anchor], dtype=np.int32),
            reqm,
            np.asarray(self.pdeg, dtype=np.int32),
        )

    def edges(self):
        return [(u, v) for u in range(self.size) for v in range(u + 1, self.size) if self.adj[u][v]]


class DenseGraph:
    """Index-space view of a :class:`~phcakernel.graph.Graph`."""

    def __init__(self, G):
        self.verts = G.vertices
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.n = len(self.verts)
        adj = G.adjacency()
        ix = self.index
        self.nbrs = [sorted(ix[u] for u in adj[v]) for v in self.verts]
        self.bits = [sum(1 << u for u in nb) for nb in self.nbrs]
        self.deg = [len(nb) for nb in self.nbrs]
        self.full = (1 << self.n) - 1

    def mask(self, vertices) -> int:
        ix = self.index
        out = 0
        for v in vertices:
            out |= 1 << ix[v]
        return out

    def ids(self, indices):
        return [self.verts[i] for i in indices]

    @cached_property
    def csr(self):
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        indptr[1:] = np.cumsum(self.deg)
        indices = np.fromiter((u for nb in self.nbrs for u in nb), dtype=np.int32, count=int(indptr[-1]))
        matrix = np.zeros((max(self.n, 1), max(self.n, 1)), dtype=np.uint8)
        if indices.size:
            rows = np.repeat(np.arange(self.n, dtype=np.int32), self.deg)
            matrix[rows, indices] = 1
        return indptr, indices, matrix, np.asarray(self.deg, dtype=np.int32)

    def bytemask(self, bits: int) -> np.ndarray:
        out = np.zeros(max(self.n, 1), dtype=np.uint8)
        if bits == self.full:
            out[: self.n] = 1
            return out
        i = 0
        while bits:
            if bits & 1:
                out[i] = 1
            bits >>= 1
            i += 1
        return out


def embeddings(dg: DenseGraph, pattern: Pattern, allowed: int | None = None, limit: int = 1):
    """Induced embeddings of ``pattern`` (index tuples in pattern-vertex order)."""
    if allowed is None:
        allowed = dg.full
    if _c is not None:
        indptr, indices, matrix, deg = dg.csr
        order, anchor, reqm, pdeg = pattern._c_args
        return _c.find_pattern(dg.n, indptr, indices, matrix, deg, order, anchor, reqm, pdeg,
                               dg.bytemask(allowed), limit)
    return _pykernels.find_pattern(dg.n, dg.nbrs, dg.bits, dg.deg, pattern.order, pattern.anchor,
                                   pattern.req, pattern.pdeg, allowed, limit)


def hole(dg: DenseGraph, alive: int | None = None):
    """Index list of a hole inside ``alive`` (default: whole graph) or None."""
    if alive is None:
        alive = dg.full
    if _c is not None:
        indptr, indices, matrix, _ = dg.csr
        return _c.find_hole(dg.n, indptr, indices, matrix, dg.bytemask(alive))
    return _pykernels.find_hole(dg.n, dg.nbrs, dg.bits, alive)


def chordal(dg: DenseGraph, alive: int | None = None) -> bool:
    if alive is None:
        alive = dg.full
    if _c is not None:
        indptr, indices, matrix, _ = dg.csr
        return _c.is_chordal(dg.n, indptr, indices, matrix, dg.bytemask(alive))
    return _pykernels.is_chordal(dg.n, dg.nbrs, dg.bits, alive)


def use_backend(name: str) -> str:
    """Switch backend at runtime ("python" or "cython"); returns the previous one."""
    global _c, BACKEND
    prev = BACKEND
    if name == "python":
        _c = None
    elif name == "cython":
        from . import _ckernels
        _c = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return prev
