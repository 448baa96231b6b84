"""Marking scheme and the graph-shrinking reduction rules.

Every rule takes an :class:`Instance` whose partitions describe ``G - T``
and returns ``(instance, event)`` when it fires, or None.  Rules that
lower the budget raise NoInstance when it would become negative.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import InternalError
from .graph import Graph
from .instance import Instance, TraceEvent
from .obstructions import greedy_claw_packing_at
from .partition import CliquePartition
from .recognition import is_interval_component
from .solvers import min_vertex_cut

Result = tuple[Instance, TraceEvent] | None

CHUNK = 50  # window length in units of k
DL = (15, 20)
DR = (30, 35)


def _t_neighbours(I: Instance) -> frozenset[int]:
    """Vertices outside T with a neighbour in T."""
    T = I.T
    out = set()
    for t in T:
        out |= I.graph.neighbors(t)
    return frozenset(out - T)


# -- marking -----------------------------------------------------------------

@dataclass(frozen=True)
class MarkedClique:
    component: int
    index: int
    marked: frozenset[int]


def mark_pair_count(T: int) -> int:
    """Ordered pairs of disjoint subsets A, B of a T-set with |A|, |B| <= 2."""
    return sum(comb(T, a) * comb(T - a, b) for a in range(min(T, 2) + 1) for b in range(3))


def _small_subsets(items):
    yield frozenset()
    for x in items:
        yield frozenset((x,))
    for pair in combinations(items, 2):
        yield frozenset(pair)


def mark1(I: Instance, P: CliquePartition, i: int) -> MarkedClique:
    """Marks of clique ``i``: for every (A, B), the vertices seeing all of A
    and none of B, or their first and last k+1 when there are more than
    2(k+1).

    T-vertices adjacent to nothing in the clique behave like the empty set,
    so only subsets of the clique's T-neighbourhood are enumerated.
    """
    Q = P.cliques[i]
    cap = I.k + 1
    trace = {v: I.graph.neighbors(v) & I.T for v in Q}
    seen = sorted(frozenset().union(*trace.values()))
    marked: set[int] = set()
    subsets = list(_small_subsets(seen))
    for A in subsets:
        for B in subsets:
            if A & B:
                continue
            S = [v for v in Q if A <= trace[v] and not B & trace[v]]
            marked.update(S if len(S) <= 2 * cap else S[:cap] + S[-cap:])
    if len(marked) > 2 * cap * mark_pair_count(len(I.T)):
        raise InternalError("marking exceeded its per-pair budget")
    return MarkedClique(P.component, i, frozenset(marked))


def rule_bound_clique(I: Instance, cache: dict | None = None) -> Result:
    """Delete the smallest vertex of G - T left unmarked by :func:`mark1`.

    Requires a proven oracle factor; ``cache`` maps clique contents to
    marks and stays valid while k and T are unchanged.
    """
    if not I.guaranteed:
        return None
    cache = {} if cache is None else cache
    best = None
    for P in I.partitions:
        for i, Q in enumerate(P.cliques):
            key = (Q, I.k, I.T)
            if key not in cache:
                cache[key] = mark1(I, P, i).marked
            free = set(Q) - cache[key]
            if free and (best is None or min(free) < best[0]):
                best = (min(free), P.component, i)
    if best is None:
        return None
    v, comp, i = best
    return I.delete([v], "bound_clique", 0, {"vertex": v, "component": comp, "clique": i})


# -- budget-lowering rules ----------------------------------------------------

def rule_claw_center(I: Instance) -> Result:
    """Delete v in T that centres k+1 claws with leaves outside T, disjoint apart from v."""
    outside = set(I.graph.vertices) - I.T
    for v in sorted(I.T):
        claws = greedy_claw_packing_at(I.graph, v, outside)
        if len(claws) >= I.k + 1:
            return I.delete([v], "claw_center", 1, {"vertex": v, "claws": [list(c.embedding) for c in claws]})
    return None


def rule_clique_spread(I: Instance) -> Result:
    """Delete v in T with neighbours in more than 6(k+1) cliques of one component."""
    limit = 6 * (I.k + 1)
    for v in sorted(I.T):
        N = I.graph.neighbors(v)
        for P in I.partitions:
            hit = [i for i, Q in enumerate(P.cliques) if N.intersection(Q)]
            if len(hit) > limit:
                return I.delete([v], "clique_spread", 1, {"vertex": v, "component": P.component, "cliques": len(hit)})
    return None


def rule_component_spread(I: Instance) -> Result:
    """Delete v in T with neighbours in at least 3(k+1) components of G - T."""
    limit = 3 * (I.k + 1)
    for v in sorted(I.T):
        N = I.graph.neighbors(v)
        hit = [P.component for P in I.partitions if N.intersection(P.index)]
        if len(hit) >= limit:
            return I.delete([v], "component_spread", 1, {"vertex": v, "components": len(hit)})
    return None


# -- components without T-neighbours ------------------------------------------

def rule_drop_interval_components(I: Instance) -> Result:
    """Keep only the k+1 smallest interval components of G - T that avoid N(T)."""
    NT = _t_neighbours(I)
    loose = []
    for P in I.partitions:
        if NT.intersection(P.index):
            continue
        if is_interval_component(I.graph.induced_subgraph(P.index)):
            loose.append(P)
    if len(loose) <= I.k + 1:
        return None
    drop = loose[I.k + 1:]
    gone = [v for P in drop for v in P.index]
    return I.delete(gone, "drop_interval_components", 0, {"components": [P.component for P in drop]})


# -- chunk compression ---------------------------------------------------------

@dataclass(frozen=True)
class Chunk:
    component: int
    start: int  # index in the component's partition of Q_1
    run: tuple[tuple[int, ...], ...]  # Q_1 .. Q_50k
    k: int

    def q(self, j: int) -> tuple[int, ...]:
        """Clique Q_j, 1-based."""
        return self.run[j - 1]

    def span(self, lo: int, hi: int) -> list[int]:
        return [v for j in range(lo, hi + 1) for v in self.q(j)]

    @property
    def F(self) -> list[int]:
        return self.span(20 * self.k + 1, 30 * self.k - 1)

    @property
    def guarded(self) -> list[int]:
        """D_L, F and D_R."""
        return self.span(DL[0] * self.k, DR[1] * self.k)


def find_chunk(I: Instance, P: CliquePartition) -> Chunk | None:
    """First window of 50k consecutive cliques of P, none meeting N(T).

    Circular partitions need more than 50k cliques so that the window
    induces a path of cliques.
    """
    k = I.k
    L = CHUNK * k
    t = P.t
    if k < 1 or t < L or (P.circular and t == L):
        return None
    NT = _t_neighbours(I)
    free = [not NT.intersection(Q) for Q in P.cliques]
    starts = range(t) if P.circular else range(t - L + 1)
    for s in starts:
        idx = [(s + j) % t for j in range(L)]
        if all(free[i] for i in idx):
            return Chunk(P.component, s, tuple(P.cliques[i] for i in idx), k)
    return None


def _distance_from(G: Graph, sources) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    q = deque(sorted(dist))
    while q:
        x = q.popleft()
        for y in sorted(G.neighbors(x)):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def rule_compress_chunk(I: Instance, require_count: bool = True) -> Result:
    """Replace the middle cliques of a long N(T)-free run by a min-cut-sized clique.

    Within the run, F = Q_{20k+1} .. Q_{30k-1} is deleted and a new clique
    of size tau (minimum Q_{20k}-Q_{30k} vertex cut inside the run) is
    joined completely to Q_{20k} and Q_{30k}.  With ``require_count`` the
    rule only looks at components having more than 300|T|k(k+1) cliques.
    """
    k = I.k
    if k < 1:
        return None
    bound = 300 * len(I.T) * k * (k + 1)
    for P in I.partitions:
        if require_count and P.t <= bound:
            continue
        ch = find_chunk(I, P)
        if ch is None:
            continue
        dist = _distance_from(I.graph, I.T)
        near = [v for v in ch.guarded if dist.get(v, 15 * k) < 15 * k]
        if near:
            raise InternalError(f"chunk vertices {near[:5]} lie within distance 15k of T")
        run = I.graph.induced_subgraph(v for Q in ch.run for v in Q)
        left, right = ch.q(20 * k), ch.q(30 * k)
        cut = min_vertex_cut(run, left, right)
        tau = len(cut)
        if tau == 0:
            raise InternalError("run is disconnected inside one component")
        S = I.fresh(tau)
        joined = list(left) + list(right)
        added = {s: [*joined, *(x for x in S if x != s)] for s in S}
        params = {"component": P.component, "start": ch.start, "tau": tau, "cut": sorted(cut)}
        return I.edit(ch.F, added, "compress_chunk", params)
    return None


# -- structural checks -----------------------------------------------------------

def clique_bound(k: int, T: int) -> int:
    # the pair count exceeds T**4 when T < 4
    return 2 * (k + 1) * max(T ** 4, mark_pair_count(T))


def component_clique_bound(k: int, T: int) -> int:
    return 300 * T * k * (k + 1)


def component_count_bound(k: int, T: int) -> int:
    return 3 * (k + 1) * T + (k + 1) + 1
