"""Cycle-rotation defense for finite square boards of even area.

Guards sit on one parity class.  For each attack a Hamiltonian cycle
through the attacked edge is computed (a boustrophedon cycle when one
fits, otherwise a pruned backtracking search) and every guard advances
one step along the cycle in the direction that carries the attacked
guard across the edge.  Guards occupy alternate cycle vertices, so the
image is exactly the opposite parity class.

Not every edge lies on a Hamiltonian cycle: a degree-2 corner forces
both of its edges into every such cycle, which saturates its neighbors
and excludes, for example, the interior rungs of 2-row boards and the
mid-row side edges of 3-row boards.  Attacks on provably excluded edges
are answered by a forced-matching move onto the same opposite-parity
cover the rotation would have produced.
"""

from __future__ import annotations

from ..errors import Indefensible
from ..game import AttackEvent, DefenseMove, GuardConfig, defense_exists
from ..grid import Coord, Edge, GridGraph, GridKind, Topology, canonical_edge
from .base import DefenseStrategy


def _snake_cycle(h: int, w: int) -> list[Coord]:
    """Column-0 spine plus row boustrophedon; needs an even height."""
    assert h % 2 == 0
    seq = [(0, y) for y in range(h)]
    for y in range(h - 1, -1, -1):
        xs = range(1, w) if (h - 1 - y) % 2 == 0 else range(w - 1, 0, -1)
        seq.extend((x, y) for x in xs)
    return seq


def _cycle_edges(seq: list[Coord]) -> frozenset[Edge]:
    return frozenset(canonical_edge(seq[i], seq[(i + 1) % len(seq)])
                     for i in range(len(seq)))


def _snake_variants(h: int, w: int) -> list[list[Coord]]:
    """The boustrophedon cycle under all board symmetries."""
    variants: list[list[Coord]] = []
    seen: set[frozenset[Edge]] = set()

    def add(seq: list[Coord]) -> None:
        key = _cycle_edges(seq)
        if key not in seen:
            seen.add(key)
            variants.append(seq)

    bases = []
    if h % 2 == 0:
        bases.append(_snake_cycle(h, w))
    if w % 2 == 0:
        bases.append([(x, y) for y, x in _snake_cycle(w, h)])
    for base in bases:
        for fx in (False, True):
            for fy in (False, True):
                add([(w - 1 - x if fx else x, h - 1 - y if fy else y)
                     for x, y in base])
    return variants


def edge_on_some_cycle(g: GridGraph, e: Edge) -> bool:
    """Cheap necessary condition via forced-edge propagation.

    Every vertex has exactly two incident edges in a Hamiltonian cycle,
    so a vertex with only two available edges forces both and a vertex
    with two forced edges excludes its others.  If the propagation
    excludes ``e``, derives a contradiction, or closes a cycle on fewer
    than all vertices, no Hamiltonian cycle through ``e`` exists.
    """
    forced: set[Edge] = {e}
    excluded: set[Edge] = set()
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            inc = [canonical_edge(v, u) for u in g.adjacency[v]]
            f = [x for x in inc if x in forced]
            avail = [x for x in inc if x not in excluded]
            if len(f) > 2 or len(avail) < 2:
                return False
            if len(f) == 2:
                for x in avail:
                    if x not in forced and x not in excluded:
                        excluded.add(x)
                        changed = True
            elif len(avail) == 2:
                for x in avail:
                    if x not in forced:
                        forced.add(x)
                        changed = True
    if e in excluded:
        return False
    # forced edges have degree <= 2 everywhere; a closed loop shorter
    # than the whole vertex set rules the edge out
    nbr: dict[Coord, list[Coord]] = {}
    for x, y in forced:
        nbr.setdefault(x, []).append(y)
        nbr.setdefault(y, []).append(x)
    start = e[0]
    prev, cur = None, start
    length = 0
    while True:
        nxt = [t for t in nbr.get(cur, ()) if t != prev]
        if not nxt:
            return True          # open chain: no loop closed yet
        prev, cur = cur, nxt[0]
        length += 1
        if cur == start:
            return length == g.n
        if length > g.n:
            return True


def _search_cycle(g: GridGraph, e: Edge) -> list[Coord] | None:
    """Backtracking Hamiltonian cycle through ``e``, fewest-options first."""
    a, b = e
    n = g.n
    adj = g.adjacency
    path = [b]
    visited = {b}

    def degree_ok(frontier: Coord) -> bool:
        for z in g.vertices:
            if z in visited or z == a:
                continue
            avail = sum(1 for t in adj[z] if t not in visited or t == frontier)
            if avail + (1 if a in adj[z] else 0) < 2:
                return False
        return True

    def rec(cur: Coord) -> bool:
        if len(path) == n - 1:
            return a in adj[cur]
        cands = sorted(adj[cur] - visited - {a})
        cands.sort(key=lambda z: len(adj[z] - visited))
        for nxt in cands:
            path.append(nxt)
            visited.add(nxt)
            if degree_ok(nxt) and rec(nxt):
                return True
            path.pop()
            visited.remove(nxt)
        return False

    if rec(b):
        return [a] + path
    return None


class HamCycleStrategy(DefenseStrategy):
    tag = "ham-cycle"

    @classmethod
    def applicable(cls, graph: GridGraph) -> bool:
        return (graph.kind is GridKind.SQUARE4
                and graph.topology is Topology.RECT
                and (graph.h * graph.w) % 2 == 0)

    def __init__(self, graph: GridGraph):
        super().__init__(graph)
        self._snakes = _snake_variants(graph.h, graph.w)
        self._snake_edges = [_cycle_edges(s) for s in self._snakes]
        self._found: dict[Edge, list[Coord]] = {}

    def _initial(self) -> GuardConfig:
        guards = frozenset(v for v in self.graph.vertices if sum(v) % 2 == 0)
        return GuardConfig(self.graph, guards)

    def _cycle_through(self, e: Edge) -> list[Coord] | None:
        if e in self._found:
            return self._found[e]
        seq: list[Coord] | None = None
        for snake, edges in zip(self._snakes, self._snake_edges):
            if e in edges:
                seq = snake
                break
        if seq is None and edge_on_some_cycle(self.graph, e):
            seq = _search_cycle(self.graph, e)
        self._found[e] = seq
        return seq

    def defend(self, c: GuardConfig, a: AttackEvent) -> DefenseMove:
        seq = self._cycle_through(a.edge)
        if seq is None:
            # no cycle carries this edge; reach the opposite parity class
            # by matching instead of rotation
            par = next(iter(c.guarded))
            parity = (par[0] + par[1]) % 2
            target = frozenset(v for v in self.graph.vertices
                               if sum(v) % 2 != parity)
            move = defense_exists(c, a, target)
            if move is None:
                raise Indefensible(
                    f"edge {a.edge} lies on no Hamiltonian cycle and no "
                    "parity-swap move exists", {"attack": a.to_json()})
            return move
        pos = {v: i for i, v in enumerate(seq)}
        n = len(seq)
        iu = pos[a.guarded_endpoint]
        delta = 1 if seq[(iu + 1) % n] == a.unguarded_endpoint else -1
        mapping = {s: seq[(pos[s] + delta) % n] for s in c.guarded}
        return DefenseMove.from_mapping(mapping)
