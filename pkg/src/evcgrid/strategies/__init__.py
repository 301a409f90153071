"""Deterministic defense strategies: (config, attack) -> move.

Each strategy declares its applicable graph family, provides its starting
cover and answers every legal attack with a legal move whose image is
again a cover.  A strategy that cannot answer raises Indefensible; that
is a finding, never something to swallow.
"""

from __future__ import annotations

from .base import DefenseStrategy
from .shift_all import ShiftAllStrategy
from .hex_case import HexCaseStrategy
from .ham_cycle import HamCycleStrategy
from .tri_tile import TriTileStrategy
from .oct_shift import OctShiftStrategy

from ..errors import NotApplicable
from ..grid import GridGraph

STRATEGIES: dict[str, type[DefenseStrategy]] = {
    cls.tag: cls
    for cls in (
        ShiftAllStrategy,
        HexCaseStrategy,
        HamCycleStrategy,
        TriTileStrategy,
        OctShiftStrategy,
    )
}


def make_strategy(tag: str, graph: GridGraph) -> DefenseStrategy:
    cls = STRATEGIES.get(tag)
    if cls is None:
        raise NotApplicable(f"unknown strategy tag {tag!r}")
    return cls(graph)


def applicable_strategies(graph: GridGraph) -> list[str]:
    return [tag for tag, cls in sorted(STRATEGIES.items()) if cls.applicable(graph)]


__all__ = [
    "DefenseStrategy",
    "ShiftAllStrategy",
    "HexCaseStrategy",
    "HamCycleStrategy",
    "TriTileStrategy",
    "OctShiftStrategy",
    "STRATEGIES",
    "make_strategy",
    "applicable_strategies",
]
