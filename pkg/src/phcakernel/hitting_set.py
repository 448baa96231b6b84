"""Sunflower-based shrinking of a set family that keeps its small minimal hitting sets."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Iterable

from .errors import InternalError

DEFAULT_D = 11  # largest small obstruction


def _key(s: frozenset) -> tuple:
    return tuple(sorted(s))


@dataclass(frozen=True)
class SetFamily:
    universe: frozenset[int]
    sets: tuple[frozenset[int], ...]
    d: int = DEFAULT_D
    k: int = 0
    unfaithful: bool = False  # d below DEFAULT_D: results are experiments only

    def __post_init__(self):
        if self.d < 1 or self.k < 0:
            raise ValueError("need d >= 1 and k >= 0")
        for s in self.sets:
            if len(s) > self.d:
                raise ValueError(f"set {_key(s)} is larger than d={self.d}")
            if not s <= self.universe:
                raise ValueError(f"set {_key(s)} is not inside the universe")

    @classmethod
    def build(cls, sets: Iterable[Iterable[int]], k: int, d: int = DEFAULT_D,
              universe: Iterable[int] | None = None) -> "SetFamily":
        """Deduplicate and sort the sets; the universe defaults to their union."""
        fs = sorted({frozenset(s) for s in sets}, key=_key)
        U = frozenset().union(*fs) if universe is None else frozenset(universe)
        return cls(U, tuple(fs), d, k, d < DEFAULT_D)

    @property
    def bound(self) -> int:
        return factorial(self.d) * (self.k + 1) ** self.d

    def __len__(self) -> int:
        return len(self.sets)

    def with_sets(self, sets) -> "SetFamily":
        return SetFamily(self.universe, tuple(sets), self.d, self.k, self.unfaithful)

    def to_json(self) -> dict:
        return {
            "universe": sorted(self.universe),
            "sets": [list(_key(s)) for s in self.sets],
            "d": self.d,
            "k": self.k,
            "unfaithful": self.unfaithful,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SetFamily":
        return cls(frozenset(data["universe"]), tuple(frozenset(s) for s in data["sets"]),
                   data["d"], data["k"], data.get("unfaithful", False))


@dataclass(frozen=True)
class Sunflower:
    core: frozenset[int]
    petals: tuple[frozenset[int], ...]

    def is_valid(self) -> bool:
        ps = self.petals
        return all(ps[i] & ps[j] == self.core for i in range(len(ps)) for j in range(i + 1, len(ps)))


def _sunflower(sets: list[frozenset], p: int):
    chosen, used = [], set()
    for s in sets:
        if not s & used:
            chosen.append(s)
            used |= s
    if len(chosen) >= p:
        return frozenset(), chosen
    counts = Counter(x for s in sets for x in s)
    if not counts:
        return None
    # most frequent element, smallest id on ties
    x = min(counts, key=lambda v: (-counts[v], v))
    inner = _sunflower(sorted((s - {x} for s in sets if x in s), key=_key), p)
    if inner is None:
        return None
    core, petals = inner
    return core | {x}, [s | {x} for s in petals]


def find_sunflower(F: SetFamily, p: int) -> Sunflower | None:
    """A sunflower with at least ``p`` petals, found by the classical recursion.

    A maximal pairwise-disjoint subfamily is taken greedily in sorted order;
    if it is too small the recursion fixes the most frequent element.  One
    is always found when ``|F| > d! (p-1)^d``.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    found = _sunflower(sorted(set(F.sets), key=_key), p)
    if found is None:
        return None
    core, petals = found
    return Sunflower(core, tuple(petals))


def reduce_family(F: SetFamily, eager: bool = False) -> SetFamily:
    """Drop petals of (k+2)-petal sunflowers until ``|F| <= d! (k+1)^d``.

    With ``eager`` the loop continues below the bound for as long as such a
    sunflower is found.  The dropped petal is the lexicographically largest.
    Hitting sets of size <= k, and therefore minimal ones, are unchanged.
    """
    if not F.sets:
        raise ValueError("family must be nonempty")
    sets = sorted(set(F.sets), key=_key)
    bound = F.bound
    p = F.k + 2
    while eager or len(sets) > bound:
        sf = find_sunflower(F.with_sets(sets), p)
        if sf is None:
            if len(sets) > bound:
                raise InternalError("no sunflower in a family above the counting bound")
            break
        drop = max(sf.petals, key=_key)
        sets.remove(drop)
    return F.with_sets(sets)


def hits(Z: Iterable[int], sets: Iterable[frozenset]) -> bool:
    Z = set(Z)
    return all(s & Z for s in sets)


def is_minimal_hitting_set(Z: Iterable[int], sets: Iterable[frozenset]) -> bool:
    Z = set(Z)
    sets = list(sets)
    return hits(Z, sets) and all(not hits(Z - {z}, sets) for z in Z)
