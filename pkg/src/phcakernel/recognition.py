"""Membership test for proper Helly circular-arc (PHCA) graphs."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError
from .graph import Graph
from .obstructions import Obstruction, find_any_obstruction, is_chordal


@dataclass(frozen=True)
class RecognitionResult:
    member: bool
    certificate: Obstruction | None = None

    def __bool__(self) -> bool:
        return self.member


def is_phca(G: Graph) -> RecognitionResult:
    obs = find_any_obstruction(G)
    return RecognitionResult(obs is None, obs)


def is_interval_component(C: Graph) -> bool:
    """Whether a connected PHCA graph has an interval model (i.e. is chordal)."""
    obs = find_any_obstruction(C)
    if obs is not None:
        raise ContractError("component is not PHCA", obs)
    return is_chordal(C)
