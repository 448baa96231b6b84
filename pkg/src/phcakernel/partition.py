"""Nice clique partitions of connected PHCA graphs.

A partition is an ordered list of cliques ``Q_1..Q_t`` covering the
component, with edges only inside a clique or between consecutive cliques
(cyclically when the component contains a hole).  Each clique also carries
a vertex order in which every outside neighbourhood is a prefix of the next
clique and a suffix of the previous one.

Construction goes through a vertex order in which every closed
neighbourhood is consecutive (cyclically for circular components), cut
greedily into cliques.  Every result is checked by :func:`verify_partition`;
small components that defeat the heuristics fall back to an exhaustive
order search.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .errors import ContractError, InternalError
from .graph import Graph, connected_components
from .obstructions import find_any_obstruction, find_hole_avoiding

EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True)
class CliquePartition:
    component: int  # smallest vertex of the component
    cliques: tuple[tuple[int, ...], ...]
    circular: bool

    @property
    def t(self) -> int:
        return len(self.cliques)

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, Q in enumerate(self.cliques) for v in Q}

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.index)

    def neighbours_of_clique(self, i: int) -> list[int]:
        """Indices of the cliques that may share edges with ``Q_i``."""
        t = self.t
        if self.circular:
            return sorted({(i - 1) % t, (i + 1) % t} - {i})
        return [j for j in (i - 1, i + 1) if 0 <= j < t]

    def to_json(self) -> dict:
        return {"component": self.component, "circular": self.circular,
                "cliques": [list(Q) for Q in self.cliques]}

    @classmethod
    def from_json(cls, data) -> "CliquePartition":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["component"]), tuple(tuple(int(v) for v in Q) for Q in data["cliques"]),
                   bool(data["circular"]))


def verify_partition(C: Graph, P: CliquePartition) -> bool:
    """All nice-partition conditions plus the within-clique umbrella order."""
    seen = [v for Q in P.cliques for v in Q]
    if len(seen) != len(set(seen)) or set(seen) != set(C.vertices) or any(not Q for Q in P.cliques):
        return False
    if P.component != min(C.vertices, default=-1):
        return False
    t = P.t
    if P.circular and t < 3:
        return False
    if P.circular != (find_hole_avoiding(C) is not None):
        return False
    idx = P.index
    adj = C.adjacency()
    for Q in P.cliques:
        qs = set(Q)
        for v in Q:
            if not qs - {v} <= adj[v]:
                return False
    for u, v in C.edges():
        d = abs(idx[u] - idx[v])
        if d > 1 and not (P.circular and d == t - 1):
            return False
    for i, Q in enumerate(P.cliques):
        nxt = (i + 1) % t if P.circular else i + 1
        prv = (i - 1) % t if P.circular else i - 1
        for v in Q:
            if nxt < t and nxt != i and not _is_prefix(P.cliques[nxt], adj[v]):
                return False
            if prv >= 0 and prv != i and not _is_prefix(P.cliques[prv][::-1], adj[v]):
                return False
    return True


def _is_prefix(order, nbrs) -> bool:
    inside = True
    for u in order:
        if u in nbrs:
            if not inside:
                return False
        else:
            inside = False
    return True


# -- vertex orders --------------------------------------------------------

def _lexbfs(adj, verts, prev=None):
    """LexBFS by partition refinement; ties go to the vertex latest in ``prev``."""
    rank = {v: i for i, v in enumerate(prev)} if prev else None
    classes = [sorted(verts)]
    order = []
    while classes:
        first = classes[0]
        v = max(first, key=rank.__getitem__) if rank else first[0]
        first.remove(v)
        if not first:
            classes.pop(0)
        order.append(v)
        nv = adj[v]
        refined = []
        for cls in classes:
            inn = [u for u in cls if u in nv]
            out = [u for u in cls if u not in nv]
            if inn:
                refined.append(inn)
            if out:
                refined.append(out)
        classes = refined
    return order


def _gaps(positions, n, circular) -> int:
    """Number of extra runs in a set of positions (0 means consecutive)."""
    ps = sorted(positions)
    breaks = sum(1 for a, b in zip(ps, ps[1:]) if b - a > 1)
    if circular and len(ps) < n and ps[0] + n - ps[-1] > 1:
        breaks += 1
    return max(breaks - (1 if circular else 0), 0)


def _is_round(order, adj, circular) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    return all(_gaps([pos[u] for u in adj[v]] + [pos[v]], n, circular) == 0 for v in order)


def _linear_order(C: Graph):
    adj = C.adjacency()
    verts = C.vertices
    starts = [verts[0]] + sorted(verts, key=lambda v: (len(adj[v]), v))[:3]
    for s in dict.fromkeys(starts):
        s1 = _lexbfs(adj, verts, [u for u in verts if u != s] + [s])
        s2 = _lexbfs(adj, verts, s1)
        s3 = _lexbfs(adj, verts, s2)
        if _is_round(s3, adj, False):
            return s3
    return None


def _walk(C: Graph, circular: bool, start: int, budget: int):
    """Depth-first construction of a round order beginning at ``start``.

    Each new vertex must be adjacent to the previous one.  A placed vertex
    stays *open* while its neighbourhood run reaches the end of the prefix;
    once closed, its unplaced neighbours may only come back as the final
    segment of a circular order, which needs it to be adjacent to the first
    vertex (*pending*, then *tail* once that segment starts).  Only the
    smallest unplaced member of each true-twin class is branched on.
    """
    adj = C.adjacency()
    n = C.n
    twin_of = {}
    reps: dict[frozenset, list[int]] = {}
    for v in C.vertices:
        key = adj[v] | {v}
        reps.setdefault(key, []).append(v)
        twin_of[v] = key
    first_adj = adj[start] | {start}
    expansions = 0

    def candidates(order, placed):
        last = order[-1]
        seen_cls = set()
        out = []
        for u in sorted(adj[last] - placed):
            cls = twin_of[u]
            if cls in seen_cls:
                continue
            seen_cls.add(cls)
            run = 0
            for x in reversed(order):
                if x not in adj[u]:
                    break
                run += 1
            out.append((-run, -len(adj[u] & adj[last]), len(adj[u] - placed), u))
        out.sort()
        return [c[-1] for c in out]

    def place(state, u):
        order, placed, opened, pending, tail, rem = state
        nu = adj[u]
        i = len(order)
        if not tail <= nu:
            return None
        back = nu & placed
        run = 0
        for x in reversed(order):
            if x not in nu:
                break
            run += 1
        if run < len(back):
            # the rest must be an initial segment (wrap-around)
            if not circular:
                return None
            head = len(back) - run
            if any(order[j] not in nu for j in range(head)):
                return None
        new_pending = set(pending)
        new_tail = set(tail)
        for x in back:
            if x in opened or x in tail:
                continue
            if x in pending:
                new_pending.discard(x)
                new_tail.add(x)
            else:
                return None
        rem = dict(rem)
        for x in nu:
            rem[x] -= 1
        for x in opened - nu:
            if rem[x] > 0:
                # x wraps: everything placed so far must be its neighbour
                if not circular or len(adj[x]) - rem[x] != i - 1:
                    return None
                # its late neighbours wrap around onto order[0..x]
                px = order.index(x)
                if any(order[j] not in adj[y] for y in adj[x] - placed - {u} for j in range(px)):
                    return None
                new_pending.add(x)
        left = n - i - 1
        if any(rem[x] != left for x in new_tail):
            return None
        new_open = {x for x in opened if x in nu} | {u}
        return (order + [u], placed | {u}, new_open, new_pending, new_tail, rem)

    rem0 = {v: len(adj[v]) for v in C.vertices}
    for x in adj[start]:
        rem0[x] -= 1
    root = ([start], frozenset([start]), {start}, set(), set(), rem0)
    stack = [(root, iter(candidates(root[0], root[1])))]
    while stack:
        state, it = stack[-1]
        if len(state[0]) == n:
            if _is_round(state[0], adj, circular):
                return state[0]
            stack.pop()
            continue
        u = next(it, None)
        if u is None:
            stack.pop()
            continue
        expansions += 1
        if expansions > budget:
            return None
        nxt = place(state, u)
        if nxt is not None:
            stack.append((nxt, iter(candidates(nxt[0], nxt[1]))))
    return None


def _round_order(C: Graph, circular: bool, budget: int | None = None):
    adj = C.adjacency()
    if budget is None:
        budget = 50 * C.n + 1000
    if not circular:
        order = _linear_order(C)
        if order is not None:
            return order
        ends = _lexbfs(adj, C.vertices)[-1:]
        starts = list(dict.fromkeys(ends + sorted(C.vertices, key=lambda v: (len(adj[v]), v))))
    else:
        starts = sorted(C.vertices, key=lambda v: (len(adj[v]), v))
    for s in starts[:8]:
        order = _walk(C, circular, s, budget)
        if order is not None:
            return order
    return None


def _cut(order, adj, circular, component):
    """Greedy cut of a round order into cliques; tries every start when circular."""
    n = len(order)
    starts = range(n) if circular else [0]
    for s in starts:
        seq = order[s:] + order[:s]
        cliques = []
        i = 0
        while i < n:
            v = seq[i]
            j = i + 1
            while j < n and seq[j] in adj[v]:
                j += 1
            cliques.append(tuple(seq[i:j]))
            i = j
        if circular and len(cliques) < 3:
            cliques = _split_to_three(cliques)
            if cliques is None:
                continue
        P = CliquePartition(component, tuple(cliques), circular)
        yield P


def _cut_dp(order, adj, component):
    """Exact search for a cyclic cut when every greedy start fails.

    Positions are rotated so that some cut falls at 0; ``reach[x]`` is the
    last position (unwrapped) of the forward neighbour run of ``x``.  A
    state is the last clique ``[a, c)``; the next cut ``d`` must keep the
    new clique a clique and every edge of ``[a, c)`` inside ``[c, d)``.
    """
    n = len(order)
    for rot in range(n):
        seq = order[rot:] + order[:rot]
        reach = []
        for i, v in enumerate(seq):
            k = 1
            while k < n and seq[(i + k) % n] in adj[v]:
                k += 1
            reach.append(i + k - 1)
        for c1 in range(1, min(reach[0] + 2, n + 1)):
            parent = {(0, c1): None}
            frontier = [(0, c1)]
            done = None
            while frontier and done is None:
                nxt = []
                for a, c in frontier:
                    top = max(reach[a:c])
                    if c == n:
                        if top < n + c1 and len(_trace(parent, (a, c))) >= 3:
                            done = (a, c)
                            break
                        continue
                    for d in range(max(c + 1, top + 1), min(reach[c] + 1, n) + 1):
                        if (c, d) not in parent:
                            parent[(c, d)] = (a, c)
                            nxt.append((c, d))
                frontier = nxt
            if done is not None:
                cliques = [tuple(seq[a:c]) for a, c in _trace(parent, done)]
                return CliquePartition(component, tuple(cliques), True)
        if reach[0] >= n - 1:
            break
    return None


def _trace(parent, state):
    out = []
    while state is not None:
        out.append(state)
        state = parent[state]
    return out[::-1]


def _split_to_three(cliques):
    flat = [list(Q) for Q in cliques]
    while len(flat) < 3:
        i = max(range(len(flat)), key=lambda j: (len(flat[j]), -j))
        Q = flat[i]
        if len(Q) < 2:
            return None
        h = len(Q) // 2
        flat[i:i + 1] = [Q[:h], Q[h:]]
    return [tuple(Q) for Q in flat]


def _exhaustive(C: Graph, circular: bool):
    adj = C.adjacency()
    verts = list(C.vertices)
    first, rest = verts[0], verts[1:]

    def rec(prefix, remaining):
        if not remaining:
            if _is_round(prefix, adj, circular):
                yield list(prefix)
            return
        for v in sorted(remaining):
            prefix.append(v)
            if _prefix_ok(prefix, adj, circular):
                remaining.discard(v)
                yield from rec(prefix, remaining)
                remaining.add(v)
            prefix.pop()

    for order in rec([first], set(rest)):
        for P in _cut(order, adj, circular, verts[0]):
            if verify_partition(C, P):
                return P
    return None


def _prefix_ok(prefix, adj, circular) -> bool:
    pos = {v: i for i, v in enumerate(prefix)}
    for v in prefix:
        ps = sorted(pos[u] for u in adj[v] | {v} if u in pos)
        runs = 1 + sum(1 for a, b in zip(ps, ps[1:]) if b - a > 1)
        if runs > 2 or (runs == 2 and (not circular or ps[0] != 0)):
            return False
    return True


def nice_clique_partition(C: Graph, exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> CliquePartition:
    """A verified nice clique partition of a connected PHCA graph."""
    if C.n == 0:
        raise ContractError("empty component")
    if len(connected_components(C)) != 1:
        raise ContractError("component is not connected")
    obs = find_any_obstruction(C)
    if obs is not None:
        raise ContractError("component is not PHCA", obs)
    adj = C.adjacency()
    comp = C.vertices[0]
    circular = find_hole_avoiding(C) is not None
    order = _round_order(C, circular)
    if order is not None:
        for P in _cut(order, adj, circular, comp):
            if verify_partition(C, P):
                return P
        if circular:
            P = _cut_dp(order, adj, comp)
            if P is not None and verify_partition(C, P):
                return P
    if C.n <= exhaustive_limit:
        P = _exhaustive(C, circular)
        if P is not None:
            return P
    raise InternalError(f"no nice clique partition found for component of size {C.n}")


def partition_components(H: Graph, previous=None) -> list[CliquePartition]:
    """Verified partitions of every component of ``H``, in component order.

    ``previous`` (partitions of a supergraph) is tried first: restricting a
    partition to the surviving vertices and dropping emptied cliques keeps
    it valid in most cases, which avoids rebuilding from scratch.
    """
    old = {v: P for P in previous or () for v in P.index}
    out = []
    for comp in connected_components(H):
        C = H.induced_subgraph(comp)
        P = None
        parents = {id(old[v]): old[v] for v in comp if v in old}
        if len(parents) == 1 and all(v in old for v in comp):
            P = restrict_partition(next(iter(parents.values())), comp)
            if P is not None and not verify_partition(C, P):
                P = None
        out.append(P or nice_clique_partition(C))
    return out


def restrict_partition(P: CliquePartition, keep) -> CliquePartition | None:
    keep = set(keep)
    cliques = tuple(t for t in (tuple(v for v in Q if v in keep) for Q in P.cliques) if t)
    if not cliques:
        return None
    return CliquePartition(min(keep), cliques, P.circular and len(cliques) >= 3)
