"""Deletion solvers for PHCA vertex deletion and the minimum vertex cut.

``exact_solve`` is a branching algorithm meant for desk-scale inputs; the
greedy heuristic stands in for an approximation algorithm with a declared
factor.  Both are wrapped as :class:`ApproxOracle` objects so the modulator
code can treat them uniformly.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import InternalError
from .graph import Graph
from .obstructions import find_any_obstruction, find_fixed_obstruction, find_monad
from .recognition import is_phca


@dataclass(frozen=True)
class Solution:
    deleted: frozenset[int]
    factor: float | None  # None: no guarantee

    @property
    def size(self) -> int:
        return len(self.deleted)

    def to_json(self) -> dict:
        return {"deleted": sorted(self.deleted), "size": self.size, "factor": self.factor}


@dataclass(frozen=True)
class ApproxOracle:
    """A PHCA deletion solver with a declared approximation factor ``c``.

    ``solve(G, cap)`` returns a verified solution; an exact oracle returns
    None when the optimum exceeds ``cap``.
    """
    name: str
    factor: float
    guaranteed: bool
    solve: Callable[[Graph, int | None], Solution | None]

    def __call__(self, G: Graph, cap: int | None = None) -> Solution | None:
        return self.solve(G, cap)


def _verified(G: Graph, deleted, factor) -> Solution:
    deleted = frozenset(deleted)
    if not is_phca(G.remove_vertices(deleted)).member:
        raise InternalError("solver returned a set whose removal is not PHCA")
    return Solution(deleted, factor)


# -- exact ---------------------------------------------------------------

def true_twin_classes(G: Graph) -> list[tuple[int, ...]]:
    """Classes of vertices with equal closed neighbourhoods, by smallest member."""
    groups: dict[frozenset, list[int]] = {}
    for v in G.vertices:
        groups.setdefault(G.closed_neighbors(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def _branch_obstruction(H: Graph):
    return find_fixed_obstruction(H) or find_monad(H)


def _packing_bound(H: Graph, weight, cap: int) -> int:
    """Weight of a greedy packing of vertex-disjoint obstructions (<= OPT)."""
    total = 0
    while total <= cap:
        O = _branch_obstruction(H)
        if O is None:
            break
        total += min(weight[v] for v in O.vertices)
        H = H.remove_vertices(O.vertices)
    return total


def exact_solve(G: Graph, k: int | None = None) -> Solution | None:
    """Minimum deletion set of size <= k (any size when k is None), or None.

    Ties between optimal sets go to the lexicographically smallest sorted
    vertex tuple.
    """
    if k is not None and k < 0:
        return None
    classes = true_twin_classes(G)
    # minimum solutions consist of whole twin classes; search on representatives
    reps = {c[0]: c for c in classes}
    weight = {r: len(c) for r, c in reps.items()}
    Q = G.induced_subgraph(reps)
    cap = G.n if k is None else min(k, G.n)
    for budget in range(cap + 1):
        found = _solutions_within(Q, weight, budget)
        if found:
            best = min(tuple(sorted(v for r in X for v in reps[r])) for X in found)
            return _verified(G, best, 1)
    return None


def _solutions_within(Q: Graph, weight, budget: int) -> list[frozenset[int]]:
    """Every inclusion-minimal-by-branching deletion set of weight <= budget."""
    out = []
    seen = set()
    stack = [frozenset()]
    while stack:
        D = stack.pop()
        if D in seen:
            continue
        seen.add(D)
        used = sum(weight[v] for v in D)
        H = Q.remove_vertices(D)
        O = _branch_obstruction(H)
        if O is None:
            out.append(D)
            continue
        left = budget - used
        if left <= 0 or _packing_bound(H, weight, left) > left:
            continue
        for v in sorted(O.vertices, reverse=True):
            if weight[v] <= left:
                stack.append(D | {v})
    return out


# -- greedy heuristic ------------------------------------------------------

def greedy_solve(G: Graph) -> Solution:
    """Delete the centre of each Monad found, or every vertex of a fixed obstruction."""
    deleted: set[int] = set()
    H = G
    while True:
        O = find_any_obstruction(H)
        if O is None:
            break
        drop = [O.centre] if O.kind == "Monad" else list(O.vertices)
        deleted.update(drop)
        H = H.remove_vertices(drop)
    return _verified(G, deleted, None)


def exact_oracle() -> ApproxOracle:
    return ApproxOracle("exact", 1, True, exact_solve)


def greedy_oracle(factor: float = 6) -> ApproxOracle:
    """Heuristic with a nominal factor; ``guaranteed`` is False."""
    return ApproxOracle("greedy", factor, False, lambda G, cap=None: greedy_solve(G))


ORACLES = {"exact": exact_oracle, "greedy": greedy_oracle}


def approx_solve(oracle: ApproxOracle, G: Graph) -> Solution:
    sol = oracle(G, None)
    if sol is None:
        raise InternalError("oracle returned no solution without a cap")
    return sol


# -- minimum vertex cut ------------------------------------------------------

def min_vertex_cut(G: Graph, A: Iterable[int], B: Iterable[int]) -> frozenset[int]:
    """Smallest S such that G - S has no path from A - S to B - S.

    S may contain vertices of A and B, but among minimum cuts one with the
    fewest such vertices is preferred (terminals cost ``M + 1``, other
    vertices ``M`` with ``M > n``).  Each vertex is split into an in/out
    pair; augmenting paths are found by BFS scanning neighbours in
    increasing id order, so the result is deterministic.
    """
    A, B = set(A), set(B)
    if A & B:
        raise ValueError("A and B must be disjoint")
    if not A or not B:
        return frozenset()
    adj = {v: sorted(nb) for v, nb in G.adjacency().items()}
    M = G.n + 1
    cap = {v: M + 1 if v in A or v in B else M for v in G.vertices}
    through: dict[int, int] = {}  # flow on the v_in -> v_out arc
    edge_flow: dict[tuple[int, int], int] = {}  # flow on u_out -> v_in
    INF = float("inf")

    def bfs():
        # node (v, 0) is v_in, (v, 1) is v_out
        parent = {}
        q = deque()
        for a in sorted(A):
            parent[(a, 0)] = None
            q.append((a, 0))
        while q:
            node = q.popleft()
            v, side = node
            if side == 0:
                steps = [((v, 1), cap[v] - through.get(v, 0))]
                steps += [((u, 1), edge_flow.get((u, v), 0)) for u in adj[v]]
            else:
                if v in B:
                    return parent, node
                steps = [((v, 0), through.get(v, 0))]
                steps += [((u, 0), INF) for u in adj[v]]
            for nxt, room in steps:
                if room > 0 and nxt not in parent:
                    parent[nxt] = node
                    q.append(nxt)
        return parent, None

    def room(prev, node):
        (u, su), (v, sv) = prev, node
        if u == v:
            return cap[v] - through.get(v, 0) if su == 0 else through.get(v, 0)
        return INF if su == 1 else edge_flow.get((v, u), 0)

    while True:
        parent, end = bfs()
        if end is None:
            break
        path = [end]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        path.reverse()
        push = min(room(x, y) for x, y in zip(path, path[1:]))
        for (u, su), (v, sv) in zip(path, path[1:]):
            if u == v:
                through[v] = through.get(v, 0) + (push if su == 0 else -push)
            elif su == 1:
                edge_flow[(u, v)] = edge_flow.get((u, v), 0) + push
            else:
                edge_flow[(v, u)] -= push
    reach = set(parent)
    return frozenset(v for v in G.vertices if (v, 0) in reach and (v, 1) not in reach)
