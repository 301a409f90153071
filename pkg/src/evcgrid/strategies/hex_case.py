"""Two-phase defense for finite hexagonal boards.

Guards start on every odd row (exactly half the vertices).  Every round
the whole configuration moves to the opposite row parity: the two
columns around the attacked edge exchange vertical shift directions and
all remaining columns shift one step the other way, with diagonal
hand-offs along slanted edges where a column has no room.  The image is
the opposite-parity cover, so the invariant "each column alternates,
either all odd or all even" holds after every round.

The explicit hand-off directions below assume the top row slants to the
right, which happens when the height is a multiple of four; boards of
height 2 mod 4 slant the other way at the top, and for those the move to
the opposite-parity cover is synthesized by forced-edge matching
instead.
"""

from __future__ import annotations

from ..errors import Indefensible
from ..game import AttackEvent, DefenseMove, GuardConfig, defense_exists
from ..grid import Coord, GridGraph, GridKind, Topology
from .base import DefenseStrategy


class HexCaseStrategy(DefenseStrategy):
    tag = "hex-case"

    @classmethod
    def applicable(cls, graph: GridGraph) -> bool:
        return graph.kind is GridKind.HEX3 and graph.topology is Topology.RECT

    def _initial(self) -> GuardConfig:
        guards = frozenset(v for v in self.graph.vertices if v[1] % 2 == 1)
        self.state = {"parity": 1}
        return GuardConfig(self.graph, guards)

    # ------------------------------------------------------------------

    def _parity(self, c: GuardConfig) -> int:
        parities = {y % 2 for _, y in c.guarded}
        if len(parities) != 1:
            raise Indefensible("guards are not on a single row parity",
                               {"guards": sorted(c.guarded)})
        return parities.pop()

    def defend(self, c: GuardConfig, a: AttackEvent) -> DefenseMove:
        g = self.graph
        parity = self._parity(c)
        if g.h % 4 == 0:
            if parity == 1:
                mapping = _odd_phase_moves(g, c.guarded, a.guarded_endpoint,
                                           a.unguarded_endpoint)
            else:
                # vertical flip is an automorphism when h % 4 == 0 and it
                # swaps the two phases; conjugate through it.
                flip = _flipper(g.h)
                raw = _odd_phase_moves(
                    g, frozenset(flip(s) for s in c.guarded),
                    flip(a.guarded_endpoint), flip(a.unguarded_endpoint))
                mapping = {flip(s): flip(t) for s, t in raw.items()}
        else:
            target = frozenset(v for v in g.vertices if v[1] % 2 != parity)
            move = defense_exists(c, a, target)
            if move is None:
                raise Indefensible(
                    "no move reaches the opposite-parity cover",
                    {"attack": a.to_json(), "guards": sorted(c.guarded)})
            self.state = {"parity": 1 - parity}
            return move
        self.state = {"parity": 1 - parity}
        return DefenseMove.from_mapping(mapping)


def _flipper(h: int):
    def flip(v: Coord) -> Coord:
        return (v[0], h - 1 - v[1])
    return flip


def _odd_phase_moves(g: GridGraph, guards: frozenset[Coord],
                     u: Coord, v: Coord) -> dict[Coord, Coord]:
    """Explicit move table for the odd-to-even shift, height 0 mod 4.

    Guard columns are complete odd rows; the attacked edge determines two
    special columns that exchange shift directions while the rest of the
    board shifts down, with slant hand-offs at the rim.
    """
    h, w = g.h, g.w
    xg, yg = u
    vx, vy = v
    mapping: dict[Coord, Coord] = {}
    exists = g.vertex_index.__contains__

    def down_column(x: int) -> None:
        for y in range(1, h, 2):
            if (x, y) in guards:
                mapping[(x, y)] = (x, y - 1)

    def rim_column(x: int) -> None:
        # right-of-the-action column: bottom guard hands left along its
        # slant, top guard hands right along its slant, rest shifts down.
        if (x, 1) in guards:
            mapping[(x, 1)] = (x - 1, 0)
        for y in range(3, h - 2, 2):
            if (x, y) in guards:
                mapping[(x, y)] = (x, y - 1)
        if (x, h - 1) in guards:
            mapping[(x, h - 1)] = (x + 1, h - 2)

    if vx == xg and vy == yg + 1:
        # vertical attack upward: column xg rises, column xg+1 falls.
        for x in range(xg):
            down_column(x)
        for y in range(1, h - 1, 2):
            if (xg, y) in guards:
                mapping[(xg, y)] = (xg, y + 1)
        if (xg, h - 1) in guards:
            mapping[(xg, h - 1)] = (xg + 1, h - 2)
        if xg + 1 <= w - 1:
            if (xg + 1, 1) in guards and exists((xg, 0)):
                mapping[(xg + 1, 1)] = (xg, 0)
            for y in range(3, h - 2, 2):
                if (xg + 1, y) in guards:
                    mapping[(xg + 1, y)] = (xg + 1, y - 1)
            if (xg + 1, h - 1) in guards:
                mapping[(xg + 1, h - 1)] = (xg + 2, h - 2)
        for x in range(xg + 2, w):
            rim_column(x)

    elif vx == xg and vy == yg - 1:
        # vertical attack downward: column xg falls, a neighbor rises.
        if xg < w - 1:
            for x in range(xg):
                down_column(x)
            down_column(xg)
            for y in range(1, h - 2, 2):
                if (xg + 1, y) in guards:
                    mapping[(xg + 1, y)] = (xg + 1, y + 1)
            if (xg + 1, h - 1) in guards:
                mapping[(xg + 1, h - 1)] = (xg + 2, h - 2)
            for x in range(xg + 2, w):
                rim_column(x)
        else:
            # attacked column is the rightmost one; its left neighbor
            # rises instead and absorbs the rim hand-offs.
            for x in range(xg - 1):
                down_column(x)
            for y in range(1, h - 2, 2):
                if (xg - 1, y) in guards:
                    mapping[(xg - 1, y)] = (xg - 1, y + 1)
            if (xg - 1, h - 1) in guards:
                mapping[(xg - 1, h - 1)] = (xg, h - 2)
            if (xg, 1) in guards:
                mapping[(xg, 1)] = (xg - 1, 0)
            for y in range(3, h, 2):
                if (xg, y) in guards:
                    mapping[(xg, y)] = (xg, y - 1)

    elif vx == xg + 1 and vy == yg - 1:
        # slant attack down-right: column xg splits around the attack.
        for x in range(xg):
            down_column(x)
        for y in range(1, yg, 2):
            if (xg, y) in guards:
                mapping[(xg, y)] = (xg, y + 1)
        mapping[u] = v
        for y in range(yg + 2, h, 2):
            if (xg, y) in guards:
                mapping[(xg, y)] = (xg, y - 1)
        if (xg + 1, 1) in guards and exists((xg, 0)):
            mapping[(xg + 1, 1)] = (xg, 0)
        for y in range(3, yg - 1, 2):
            if (xg + 1, y) in guards:
                mapping[(xg + 1, y)] = (xg + 1, y - 1)
        for y in range(yg, h - 2, 2):
            if (xg + 1, y) in guards:
                mapping[(xg + 1, y)] = (xg + 1, y + 1)
        if (xg + 1, h - 1) in guards:
            mapping[(xg + 1, h - 1)] = (xg + 2, h - 2)
        for x in range(xg + 2, w):
            rim_column(x)

    elif vx == xg - 1 and vy == yg - 1:
        # slant attack down-left: columns xg-1 and xg split.
        for x in range(xg - 1):
            down_column(x)
        for y in range(1, yg - 1, 2):
            if (xg - 1, y) in guards:
                mapping[(xg - 1, y)] = (xg - 1, y - 1)
        for y in range(yg, h - 2, 2):
            if (xg - 1, y) in guards:
                mapping[(xg - 1, y)] = (xg - 1, y + 1)
        if (xg - 1, h - 1) in guards:
            mapping[(xg - 1, h - 1)] = (xg, h - 2)
        for y in range(1, yg - 1, 2):
            if (xg, y) in guards:
                mapping[(xg, y)] = (xg, y + 1)
        mapping[u] = v
        for y in range(yg + 2, h - 2, 2):
            if (xg, y) in guards:
                mapping[(xg, y)] = (xg, y - 1)
        if (xg, h - 1) in guards:
            mapping[(xg, h - 1)] = (xg + 1, h - 2)
        for x in range(xg + 1, w):
            rim_column(x)

    else:
        raise Indefensible(f"unclassifiable hexagonal attack {u} -> {v}")

    for s in guards:
        mapping.setdefault(s, s)
    return mapping
