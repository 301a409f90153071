"""Two-cover oscillation for finite triangular boards.

The board splits into 3x3 tiles plus a stripe of width at most two along
the top and right rim.  Inside the tiled region the two covers guard six
of every nine vertices (the complement being one of the three diagonal
congruence classes); the stripe is guarded in both covers.  Every attack
is answered by moving the whole configuration to the opposite cover; the
concrete injection is synthesized by forced-edge matching, which raises
a finding whenever no legal shift exists.

Two-row strips use their own pair of covers in which pairs of guarded
vertices alternate with single unguarded ones.
"""

from __future__ import annotations

from ..errors import Indefensible
from ..game import AttackEvent, DefenseMove, GuardConfig, defense_exists
from ..grid import Coord, GridGraph, GridKind, Topology
from .base import DefenseStrategy


def _strip_covers(w: int) -> tuple[frozenset[Coord], frozenset[Coord]]:
    """The oscillating pair for a 2-row strip, rows y=0 and y=1."""
    w3, tail = divmod(w, 3)
    s1: set[Coord] = set()
    s2: set[Coord] = set()
    for i in range(w3):
        s1.update({(1 + 3 * i, 0), (2 + 3 * i, 0), (3 * i, 1), (1 + 3 * i, 1)})
        s2.update({(3 * i, 0), (2 + 3 * i, 0), (1 + 3 * i, 1), (2 + 3 * i, 1)})
    for j in range(tail):
        s1.update({(3 * w3 + j, 0), (3 * w3 + j, 1)})
        s2.update({(3 * w3 + j, 0), (3 * w3 + j, 1)})
    return frozenset(s1), frozenset(s2)


def _tile_covers(g: GridGraph) -> tuple[frozenset[Coord], frozenset[Coord]]:
    h3 = g.h // 3
    w3 = g.w // 3

    def cover(excluded_class: int) -> frozenset[Coord]:
        out = set()
        for v in g.vertices:
            x, y = v
            in_tiles = x < 3 * w3 and y < 3 * h3
            if not in_tiles or (x + y) % 3 != excluded_class:
                out.add(v)
        return frozenset(out)

    return cover(1), cover(2)


class TriTileStrategy(DefenseStrategy):
    tag = "tri-tile"

    @classmethod
    def applicable(cls, graph: GridGraph) -> bool:
        if graph.kind is not GridKind.TRI6 or graph.topology is not Topology.RECT:
            return False
        h, w = graph.h, graph.w
        if h >= 3 and w >= 3:
            return True
        return (h == 2 and w >= 3) or (w == 2 and h >= 3)

    def __init__(self, graph: GridGraph):
        super().__init__(graph)
        h, w = graph.h, graph.w
        if h == 2:
            self._covers = _strip_covers(w)
        elif w == 2:
            a, b = _strip_covers(h)
            transpose = lambda s: frozenset((y, x) for x, y in s)  # noqa: E731
            self._covers = (transpose(a), transpose(b))
        else:
            self._covers = _tile_covers(graph)

    def _initial(self) -> GuardConfig:
        self.state = {"phase": "s1"}
        return GuardConfig(self.graph, self._covers[0])

    def defend(self, c: GuardConfig, a: AttackEvent) -> DefenseMove:
        s1, s2 = self._covers
        if c.guarded == s1:
            target, next_phase = s2, "s2"
        elif c.guarded == s2:
            target, next_phase = s1, "s1"
        else:
            raise Indefensible("configuration is neither oscillation cover",
                               {"guards": sorted(c.guarded)})
        move = defense_exists(c, a, target)
        if move is None:
            raise Indefensible("no shift onto the opposite cover",
                               {"attack": a.to_json(), "phase": self.state.get("phase")})
        self.state = {"phase": next_phase}
        return move
