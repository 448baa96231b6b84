"""Forbidden induced subgraphs of proper Helly circular-arc graphs.

Six fixed graphs (claw, net, tent, W4, W5, complement of C6) and the
Monads: an induced cycle of length at least four plus one vertex adjacent
to none of it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from . import _kernels
from ._kernels import Pattern
from .graph import Graph

SMALL_SIZE = 12  # obstructions with fewer vertices are "small"
MAX_SMALL_HOLE = SMALL_SIZE - 2

CLAW = Pattern("Claw", 4, [(0, 1), (0, 2), (0, 3)])
NET = Pattern("Net", 6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
TENT = Pattern("Tent", 6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)])
W4 = Pattern("W4", 5, [(0, 1), (1, 2), (2, 3), (3, 0)] + [(4, i) for i in range(4)])
W5 = Pattern("W5", 6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] + [(5, i) for i in range(5)])
CO_C6 = Pattern("CoC6", 6, [(i, j) for i, j in combinations(range(6), 2) if (j - i) % 6 not in (1, 5)])

FIXED_PATTERNS = (CLAW, NET, TENT, W4, W5, CO_C6)
KINDS = tuple(p.name for p in FIXED_PATTERNS) + ("Monad",)
KIND_SIZE = {p.name: p.size for p in FIXED_PATTERNS}


@dataclass(frozen=True)
class Obstruction:
    kind: str
    vertices: tuple[int, ...]
    hole: tuple[int, ...] = ()
    centre: int | None = None
    # image of each pattern vertex, for fixed kinds
    embedding: tuple[int, ...] = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def is_small(self) -> bool:
        return self.size < SMALL_SIZE

    def to_json(self) -> dict:
        out = {"kind": self.kind, "vertices": list(self.vertices)}
        if self.kind == "Monad":
            out["hole"] = list(self.hole)
            out["centre"] = self.centre
        return out

    @classmethod
    def monad(cls, hole: Iterable[int], centre: int) -> "Obstruction":
        hole = tuple(hole)
        return cls("Monad", tuple(sorted((*hole, centre))), hole, centre)


def _fixed_from_embedding(pattern: Pattern, dg, emb) -> Obstruction:
    ids = tuple(dg.ids(emb))
    return Obstruction(pattern.name, tuple(sorted(ids)), embedding=ids)


def find_fixed_obstruction(G: Graph, allowed: Iterable[int] | None = None) -> Obstruction | None:
    """First induced claw/net/tent/W4/W5/co-C6, searched in that order.

    Within a kind the embedding found first in lexicographic search order is
    returned, so the answer is deterministic.
    """
    dg = G.dense
    mask = None if allowed is None else dg.mask(allowed)
    for pattern in FIXED_PATTERNS:
        hit = _kernels.embeddings(dg, pattern, mask, limit=1)
        if hit:
            return _fixed_from_embedding(pattern, dg, hit[0])
    return None


def find_hole_avoiding(G: Graph, F: Iterable[int] = ()) -> tuple[int, ...] | None:
    """An induced cycle of length >= 4 in ``G - F``; None iff ``G - F`` is chordal."""
    dg = G.dense
    alive = dg.full & ~dg.mask(F)
    h = _kernels.hole(dg, alive)
    return None if h is None else tuple(dg.ids(h))


def is_chordal(G: Graph) -> bool:
    return _kernels.chordal(G.dense)


def find_monad(G: Graph) -> Obstruction | None:
    """For each vertex v in increasing order look for a hole in ``G - N[v]``."""
    dg = G.dense
    if G.n < 5 or _kernels.chordal(dg):
        return None
    for i, v in enumerate(dg.verts):
        alive = dg.full & ~dg.bits[i] & ~(1 << i)
        if alive.bit_count() < 4:
            continue
        h = _kernels.hole(dg, alive)
        if h is not None:
            return Obstruction.monad(dg.ids(h), v)
    return None


def find_any_obstruction(G: Graph) -> Obstruction | None:
    """A fixed obstruction if present, else a Monad, else None (G is PHCA)."""
    return find_fixed_obstruction(G) or find_monad(G)


def induced_cycles(G: Graph, min_len: int = 4, max_len: int = MAX_SMALL_HOLE, within=None):
    """All induced cycles with ``min_len <= length <= max_len``.

    Each cycle is reported once, starting at its smallest vertex and
    oriented so that the second vertex is smaller than the last.
    """
    adj = G.adjacency()
    allowed = set(G.vertices if within is None else within)
    out = []

    def extend(path, on_path, start):
        last = path[-1]
        for w in sorted(adj[last]):
            if w <= start or w in on_path or w not in allowed:
                continue
            # w may touch only `last` and, when closing, `start`
            touches = adj[w] & on_path
            if touches - {last, start}:
                continue
            if start in touches:
                if len(path) + 1 >= min_len and len(path) >= 3 and path[1] < w:
                    out.append((*path, w))
                continue
            if len(path) + 1 < max_len:
                path.append(w)
                on_path.add(w)
                extend(path, on_path, start)
                on_path.discard(w)
                path.pop()

    for s in sorted(allowed):
        for a in sorted(adj[s]):
            if a <= s or a not in allowed:
                continue
            extend([s, a], {s, a}, s)
    return out


def enumerate_minimal_small_obstructions(G: Graph) -> list[frozenset[int]]:
    """Every vertex set of size < 12 inducing an obstruction (all are minimal).

    Fixed kinds come from exhaustive pattern embedding, Monads from induced
    cycles of length 4..10 paired with each non-adjacent centre.  The
    result is deduplicated and sorted.
    """
    dg = G.dense
    found: set[frozenset[int]] = set()
    for pattern in FIXED_PATTERNS:
        for emb in _kernels.embeddings(dg, pattern, None, limit=1 << 62):
            found.add(frozenset(dg.ids(emb)))
    if G.n >= 5 and not _kernels.chordal(dg):
        adj = G.adjacency()
        for cyc in induced_cycles(G):
            touched = set(cyc)
            for c in cyc:
                touched |= adj[c]
            for centre in G.vertices:
                if centre not in touched:
                    found.add(frozenset((*cyc, centre)))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _is_induced_cycle(G: Graph, cyc) -> bool:
    L = len(cyc)
    if L < 4 or len(set(cyc)) != L:
        return False
    pos = {v: i for i, v in enumerate(cyc)}
    for v in cyc:
        nb = G.neighbors(v) & pos.keys()
        expect = {cyc[(pos[v] + 1) % L], cyc[(pos[v] - 1) % L]}
        if nb != expect:
            return False
    return True


def verify_obstruction(G: Graph, O: Obstruction) -> bool:
    """Check that ``O`` really is the claimed induced subgraph of ``G``."""
    if any(v not in G for v in O.vertices) or len(set(O.vertices)) != len(O.vertices):
        return False
    if O.kind == "Monad":
        if O.centre is None or not _is_induced_cycle(G, O.hole):
            return False
        if set(O.vertices) != {*O.hole, O.centre} or O.centre in O.hole:
            return False
        return not (G.neighbors(O.centre) & set(O.hole))
    pattern = next((p for p in FIXED_PATTERNS if p.name == O.kind), None)
    if pattern is None or len(O.vertices) != pattern.size:
        return False
    H = G.induced_subgraph(O.vertices)
    if H.m != len(pattern.edges()):
        return False
    return bool(_kernels.embeddings(H.dense, pattern, None, limit=1))


def greedy_claw_packing_at(G: Graph, v: int, allowed: Iterable[int]) -> list[Obstruction]:
    """Claws centred at ``v`` with leaves in ``allowed``, disjoint apart from v.

    Leaf triples are taken greedily in lexicographic order, so the length
    is a lower bound on the maximum packing, not the maximum itself.
    """
    pool = sorted(G.neighbors(v) & set(allowed) - {v})
    adj = G.adjacency()
    out = []
    used: set[int] = set()
    progress = True
    while progress:
        progress = False
        free = [u for u in pool if u not in used]
        for a, b, c in combinations(free, 3):
            if b in adj[a] or c in adj[a] or c in adj[b]:
                continue
            out.append(Obstruction("Claw", tuple(sorted((v, a, b, c))), embedding=(v, a, b, c)))
            used.update((a, b, c))
            progress = True
            break
    return out
