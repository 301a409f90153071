"""Column-shift defense for finite king-graph boards.

Initial cover: every vertex of every other column starting at column 1,
plus alternate vertices (ceil(h/2) of them, even rows) on the remaining
columns.  A defense only touches the two columns around the attacked
edge: below the attack the sparse column closes downward and its bottom
guard steps left, the full column closes the hole upward, and above the
attack the sparse column opens upward.  The running invariant is that
full columns stay full and sparse columns never expose two adjacent
unguarded vertices nor drop below ceil(h/2) guards.

The literal shuffle assumes the attack points up/right and the sparse
column's bottom vertex is guarded; other orientations are reached by
flipping the board.  Configurations the shuffle does not cover (they
arise at the rim once a sparse column has flipped its phase) fall back
to a forced-matching move onto a repaired column pattern; if no such
move exists the round is reported as indefensible.
"""

from __future__ import annotations

from ..errors import IllegalMove, Indefensible
from ..game import (
    AttackEvent,
    DefenseMove,
    GuardConfig,
    defense_exists,
    validate_move,
)
from ..grid import Coord, GridGraph, GridKind, Topology
from .base import DefenseStrategy


class OctShiftStrategy(DefenseStrategy):
    tag = "oct-shift"

    @classmethod
    def applicable(cls, graph: GridGraph) -> bool:
        return graph.kind is GridKind.OCT8 and graph.topology is Topology.RECT

    def _initial(self) -> GuardConfig:
        guards = {v for v in self.graph.vertices if v[0] % 2 == 1}
        guards.update(v for v in self.graph.vertices
                      if v[0] % 2 == 0 and v[1] % 2 == 0)
        return GuardConfig(self.graph, frozenset(guards))

    def defend(self, c: GuardConfig, a: AttackEvent) -> DefenseMove:
        g = self.graph
        u = a.guarded_endpoint
        v = a.unguarded_endpoint
        for fx in (False, True):
            for fy in (False, True):
                flip = _flipper(g.w, g.h, fx, fy)
                fguards = frozenset(flip(s) for s in c.guarded)
                fu, fv = flip(u), flip(v)
                if not _shuffle_applies(g, fguards, fu, fv):
                    continue
                raw = _column_shuffle(g, fguards, fu, fv)
                mapping = {flip(s): flip(t) for s, t in raw.items()}
                move = DefenseMove.from_mapping(mapping)
                try:
                    validate_move(c, a, move)
                except IllegalMove:
                    continue
                image = move.image
                if g.is_cover(image) and column_invariant_ok(g, image):
                    return move
        for target in _repaired_targets(g, c.guarded, u, v):
            move = defense_exists(c, a, target)
            if move is not None:
                return move
        raise Indefensible("no column shift nor repaired pattern is reachable",
                           {"attack": a.to_json(), "guards": sorted(c.guarded)})


def column_invariant_ok(g: GridGraph, guards) -> bool:
    """Full odd columns; sparse columns alternated with >= ceil(h/2) guards."""
    h = g.h
    for x in range(g.w):
        col = [y for y in range(h) if (x, y) in guards]
        if x % 2 == 1:
            if len(col) != h:
                return False
        else:
            if len(col) < (h + 1) // 2:
                return False
            holes = sorted(set(range(h)) - set(col))
            if any(b - a == 1 for a, b in zip(holes, holes[1:])):
                return False
    return True


def _flipper(w: int, h: int, fx: bool, fy: bool):
    def flip(p: Coord) -> Coord:
        return (w - 1 - p[0] if fx else p[0], h - 1 - p[1] if fy else p[1])
    return flip


def _shuffle_applies(g: GridGraph, guards: frozenset[Coord],
                     u: Coord, v: Coord) -> bool:
    x2, y2 = v
    if x2 < 1:
        return False
    if u[0] == x2:
        if y2 != u[1] + 1:
            return False
    elif u[0] == x2 - 1:
        if y2 not in (u[1], u[1] + 1):
            return False
    else:
        return False
    if (x2, 0) not in guards:
        return False
    return all((x2 - 1, y) in guards for y in range(g.h))


def _column_shuffle(g: GridGraph, guards: frozenset[Coord],
                    u: Coord, v: Coord) -> dict[Coord, Coord]:
    """The literal two-column shuffle in canonical orientation."""
    h = g.h
    x2 = v[0]
    left = x2 - 1
    y_attack = u[1]
    vertical = u[0] == x2
    diagonal = (not vertical) and v[1] == u[1] + 1
    mapping: dict[Coord, Coord] = {u: v}

    # sparse column below the attack closes downward
    for i in range(1, y_attack):
        s = (x2, i)
        if s in guards and s not in mapping:
            mapping[s] = (x2, i - 1)
    if diagonal and y_attack >= 1:
        s = (x2, y_attack)
        if s in guards and s not in mapping:
            mapping[s] = (x2, y_attack - 1)
    # its bottom guard leaves into the full column
    s = (x2, 0)
    if s in guards and s not in mapping:
        mapping[s] = (left, 0)
    # sparse column above the unguarded endpoint opens upward
    for i in range(v[1] + 1, h - 1):
        s = (x2, i)
        if s in guards and s not in mapping:
            mapping[s] = (x2, i + 1)
    # a vertical attack leaves two adjacent holes below; patch from the left
    if vertical and y_attack >= 2:
        s = (left, y_attack - 1)
        if s in guards and s not in mapping:
            mapping[s] = (x2, y_attack - 1)
    # full column closes up under the departures
    for i in range(0, y_attack):
        s = (left, i)
        if s in guards and s not in mapping:
            mapping[s] = (left, i + 1)

    for s in guards:
        mapping.setdefault(s, s)
    return mapping


def _repaired_targets(g: GridGraph, guards: frozenset[Coord],
                      u: Coord, v: Coord):
    """Candidate images for the fallback: rebuild the attacked column."""
    h = g.h
    x2 = v[0]
    count = sum(1 for s in guards if s[0] == x2)
    parity = v[1] % 2
    base = [y for y in range(h) if y % 2 == parity]
    columns: list[list[int]] = []
    if len(base) == count:
        columns.append(base)
    elif len(base) == count - 1:
        for extra in (h - 1, 0):
            if extra % 2 != parity and extra not in base:
                columns.append(sorted(base + [extra]))
    elif len(base) == count + 1:
        for drop in (base[-1], base[0]):
            if drop != v[1]:
                columns.append([y for y in base if y != drop])

    rest = frozenset(s for s in guards if s[0] != x2)
    for col in columns:
        target = rest | frozenset((x2, y) for y in col)
        if len(target) != len(guards):
            continue
        if g.is_cover(target) and column_invariant_ok(g, target):
            yield target
