"""Efficient modulator, redundant solution, and the nice modulator built from them.

The efficient modulator ``T1`` holds an approximate solution plus the
vertices of a sunflower-reduced family of small obstructions.  The
redundant solution ``M`` comes from repeatedly calling the oracle on graphs
in which a tuple of solution vertices has been made expensive to delete
(:func:`copy_graph`).  Each call either proves the tuple's vertex set
``U`` must be hit by every small solution (``U`` joins ``W``), or returns
new vertices that hit every obstruction through ``U`` once more.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable

from .errors import InternalError, NoInstance
from .graph import Graph
from .hitting_set import DEFAULT_D, SetFamily, reduce_family
from .instance import Instance, TraceEvent
from .obstructions import enumerate_minimal_small_obstructions
from .solvers import ApproxOracle

DEFAULT_R = 5


def _sorted_sets(sets: Iterable[frozenset]) -> tuple[frozenset, ...]:
    return tuple(sorted(set(sets), key=lambda s: (len(s), sorted(s))))


@dataclass(frozen=True)
class ModulatorBundle:
    T1: frozenset[int]
    M: frozenset[int]
    W: tuple[frozenset[int], ...]
    ell: int
    r: int
    factor: float
    guaranteed: bool = True

    @property
    def T(self) -> frozenset[int]:
        return self.T1 | self.M

    def without(self, deleted: Iterable[int]) -> "ModulatorBundle":
        """Drop deleted vertices; W-sets they belonged to are hit and disappear."""
        d = set(deleted)
        if not d:
            return self
        return replace(self, T1=self.T1 - d, M=self.M - d, W=tuple(s for s in self.W if not s & d))

    def to_json(self) -> dict:
        return {
            "T1": sorted(self.T1),
            "M": sorted(self.M),
            "W": [sorted(s) for s in self.W],
            "ell": self.ell,
            "r": self.r,
            "factor": self.factor,
            "guaranteed": self.guaranteed,
        }


# -- copy --------------------------------------------------------------------

def copy_graph(G: Graph, U: Iterable[int], t: int, first_id: int | None = None) -> Graph:
    """``G`` plus ``t`` true twins of every vertex of ``U``.

    Each twin is adjacent to its original, to the other twins of that
    original, to the original's neighbours and to their twins.  Twins get
    ids from ``first_id`` (default ``max_id + 1``) in order of (original,
    copy index) and carry the label ``(original, index)``.
    """
    U = sorted(set(U))
    if t < 0:
        raise ValueError("t must be nonnegative")
    for u in U:
        if u not in G:
            raise ValueError(f"vertex {u} not in graph")
    if not U or t == 0:
        return G
    nxt = G.max_id + 1 if first_id is None else max(first_id, G.max_id + 1)
    twins = {u: list(range(nxt + j * t, nxt + (j + 1) * t)) for j, u in enumerate(U)}
    new: dict[int, list[int]] = {}
    labels = {}
    for u in U:
        for i, x in enumerate(twins[u], 1):
            nb = [u, *(y for y in twins[u] if y != x)]
            for w in G.neighbors(u):
                nb.append(w)
                nb.extend(twins.get(w, ()))
            new[x] = nb
            labels[x] = (u, i)
    return G.add_vertices(new, labels)


# -- redundant solution ------------------------------------------------------

@dataclass(frozen=True)
class RedundantSolution:
    M: frozenset[int]
    W: tuple[frozenset[int], ...]
    layers: tuple[tuple[tuple[int, ...], ...], ...]  # T_0 .. T_r
    m_sizes: tuple[int, ...]  # |M_0| .. |M_r|
    threshold: int  # floor(c * ell)
    oracle_calls: int = field(default=0, compare=False)


def red_phcavd(G: Graph, ell: int, r: int, oracle: ApproxOracle) -> RedundantSolution:
    """Grow an r-redundant solution ``M`` and an ell-necessary family ``W``.

    The oracle threshold is ``c * ell`` for the oracle's factor ``c``.
    Raises NoInstance when the first solution exceeds it, provided the
    factor is guaranteed; the guarantee-free oracle carries on and its
    ``W`` is only heuristic.
    """
    if r < 0 or ell < 0:
        raise ValueError("need r >= 0 and ell >= 0")
    thr = math.floor(oracle.factor * ell)
    verts = frozenset(G.vertices)
    sol = oracle(G, thr)
    if sol is None or sol.size > thr:
        if oracle.guaranteed:
            raise NoInstance(f"oracle solution exceeds {thr} = c*ell")
        if sol is None:
            raise InternalError("unguaranteed oracle returned nothing")
    M = set(sol.deleted)
    bounded = len(M) <= thr
    W: list[frozenset] = []
    layers = [tuple((v,) for v in sorted(M))]
    sizes = [len(M)]
    cache: dict[frozenset, frozenset | None] = {}
    calls = 1
    for i in range(1, r + 1):
        nxt, seen = [], set()
        for tup in layers[-1]:
            U = frozenset(tup)
            if U not in cache:
                A = oracle(copy_graph(G, U, thr), thr)
                calls += 1
                cache[U] = None if A is None or A.size > thr else A.deleted & verts
            A = cache[U]
            if A is None:
                if U not in W:
                    W.append(U)
                continue
            for u in sorted(A - U):
                M.add(u)
                ext = tup + (u,)
                if ext not in seen:
                    seen.add(ext)
                    nxt.append(ext)
        layers.append(tuple(nxt))
        sizes.append(len(M))
        if bounded:
            if len(nxt) > thr ** (i + 1):
                raise InternalError(f"|T_{i}| = {len(nxt)} exceeds {thr ** (i + 1)}")
            if len(M) > sum(thr ** (j + 1) for j in range(i + 1)):
                raise InternalError(f"|M_{i}| = {len(M)} exceeds its bound")
    return RedundantSolution(frozenset(M), _sorted_sets(W), tuple(layers), tuple(sizes), thr, calls)


# -- efficient modulator -----------------------------------------------------

@dataclass(frozen=True)
class EfficientModulator:
    T1: frozenset[int]
    approx: frozenset[int]  # T'
    family: SetFamily  # reduced small-obstruction family; its union is T''


def build_efficient_modulator(G: Graph, k: int, oracle: ApproxOracle, d: int = DEFAULT_D,
                              eager: bool = True) -> EfficientModulator:
    """``T1 = T' | T''``: an oracle solution plus the union of a reduced family
    of all small obstructions, so that minimal hitting sets of size <= k for
    small obstructions of G and of ``G[T1]`` coincide.

    NoInstance when the oracle's solution exceeds ``c * k`` (guaranteed
    oracles only).
    """
    thr = math.floor(oracle.factor * k)
    sol = oracle(G, thr)
    if sol is None or sol.size > thr:
        if oracle.guaranteed:
            raise NoInstance(f"oracle solution exceeds {thr} = c*k")
        if sol is None:
            raise InternalError("unguaranteed oracle returned nothing")
    sets = enumerate_minimal_small_obstructions(G)
    F = SetFamily.build(sets, k=k, d=d, universe=G.vertices)
    if F.sets:
        F = reduce_family(F, eager=eager)
    T2 = frozenset().union(*F.sets)
    if len(T2) > d * F.bound:
        raise InternalError("reduced family larger than its counting bound")
    return EfficientModulator(sol.deleted | T2, sol.deleted, F)


# -- singleton rule and assembly ---------------------------------------------

def singleton_w_rule(I: Instance, W: Iterable[frozenset]) -> tuple[Instance, tuple[frozenset, ...], TraceEvent] | None:
    """Delete ``v`` when ``{v}`` is in W, lowering k; sets containing ``v`` are dropped.

    Needs a proven oracle factor, since otherwise W is not known to be
    necessary.
    """
    if not I.guaranteed:
        return None
    W = tuple(W)
    single = sorted(next(iter(s)) for s in W if len(s) == 1)
    if not single:
        return None
    v = single[0]
    J, ev = I.delete([v], "singleton_w", 1, {"vertex": v})
    return J, tuple(s for s in W if v not in s), ev


def assemble_nice_modulator(T1: Iterable[int], M: Iterable[int], W: Iterable[frozenset], ell: int,
                            r: int = DEFAULT_R, factor: float = 1, guaranteed: bool = True) -> ModulatorBundle:
    M = frozenset(M)
    W = _sorted_sets(W)
    for s in W:
        if not s <= M:
            raise InternalError("W-set outside M")
        if guaranteed and len(s) < 2:
            raise InternalError("singleton W-set left after the singleton rule")
    return ModulatorBundle(frozenset(T1), M, W, ell, r, factor, guaranteed)


def covered(O: Iterable[int], W: Iterable[frozenset]) -> bool:
    """True when some W-set lies inside the vertex set O."""
    O = set(O)
    return any(s <= O for s in W)
