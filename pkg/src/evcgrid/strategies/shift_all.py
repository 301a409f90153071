"""Whole-board translation defense on toroidal boards.

On a torus whose dimensions are multiples of the pattern periods, every
guard can shift in the direction of the attacked edge and the image is a
lattice translate of the pattern, hence again a cover.  The hexagonal
board is the exception: its slanted edges are not translation-invariant,
so vertical attacks shift every guard vertically while slanted attacks
send every guard across its own slanted edge (an involution).
"""

from __future__ import annotations

from ..cover import pattern
from ..errors import Indefensible
from ..game import AttackEvent, DefenseMove, GuardConfig
from ..grid import GridGraph, GridKind, Topology, hex_slant_offset
from .base import DefenseStrategy

_OFFSET_ORDER = {
    GridKind.SQUARE4: ((1, 0), (-1, 0), (0, 1), (0, -1)),
    GridKind.TRI6: ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)),
    GridKind.OCT8: ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1),
                    (-1, 1), (1, -1)),
}


class ShiftAllStrategy(DefenseStrategy):
    tag = "shift-all"

    @classmethod
    def applicable(cls, graph: GridGraph) -> bool:
        if graph.topology is not Topology.TORUS or not graph.kind.is_grid:
            return False
        p = pattern(graph.kind)
        return graph.w % p.period_x == 0 and graph.h % p.period_y == 0

    def _initial(self) -> GuardConfig:
        p = pattern(self.graph.kind)
        return GuardConfig(self.graph, p.select(self.graph.vertices))

    def defend(self, c: GuardConfig, a: AttackEvent) -> DefenseMove:
        g = self.graph
        w, h = g.w, g.h
        u = a.guarded_endpoint
        v = a.unguarded_endpoint
        if g.kind is GridKind.HEX3:
            if u[0] == v[0]:
                dy = 1 if (u[1] + 1) % h == v[1] else -1
                mapping = {s: (s[0], (s[1] + dy) % h) for s in c.guarded}
            else:
                mapping = {}
                for s in c.guarded:
                    dx, dy = hex_slant_offset(s[1])
                    mapping[s] = ((s[0] + dx) % w, (s[1] + dy) % h)
            return DefenseMove.from_mapping(mapping)
        for dx, dy in _OFFSET_ORDER[g.kind]:
            if ((u[0] + dx) % w, (u[1] + dy) % h) == v:
                mapping = {s: ((s[0] + dx) % w, (s[1] + dy) % h) for s in c.guarded}
                return DefenseMove.from_mapping(mapping)
        raise Indefensible(f"attacked edge {a.edge} matches no lattice direction")
