"""The guard game: configurations, attacks, defense moves and rounds.

A game state is a vertex cover with one guard per guarded vertex.  An
attack names an edge with exactly one guarded endpoint; a defense is an
injective relocation of all guards, each within its closed neighborhood,
that sends the attacked guard across the attacked edge.  The new guard
set must again be a cover or the defender has lost.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import CoverBroken, IllegalMove, NotACover, SizeMismatch
from .grid import Coord, Edge, GridGraph, canonical_edge


@dataclass(frozen=True)
class GuardConfig:
    graph: GridGraph
    guarded: frozenset[Coord]

    def __post_init__(self):
        if not self.guarded <= set(self.graph.vertices):
            raise NotACover("guards placed outside the graph")
        if not self.graph.is_cover(self.guarded):
            raise NotACover("guard set does not cover every edge")

    @property
    def size(self) -> int:
        return len(self.guarded)

    def sorted_guards(self) -> list[Coord]:
        return sorted(self.guarded)


@dataclass(frozen=True)
class AttackEvent:
    """An attacked edge together with its guarded endpoint."""

    edge: Edge
    guarded_endpoint: Coord

    @property
    def unguarded_endpoint(self) -> Coord:
        a, b = self.edge
        return b if self.guarded_endpoint == a else a

    def to_json(self) -> list:
        return [list(self.edge[0]), list(self.edge[1])]


@dataclass(frozen=True)
class DefenseMove:
    """Injective guard relocation, stored as sorted (source, target) pairs."""

    moves: tuple[tuple[Coord, Coord], ...]

    @classmethod
    def from_mapping(cls, mapping: dict[Coord, Coord]) -> "DefenseMove":
        return cls(tuple(sorted(mapping.items())))

    @property
    def mapping(self) -> dict[Coord, Coord]:
        return dict(self.moves)

    @property
    def image(self) -> frozenset[Coord]:
        return frozenset(t for _, t in self.moves)

    def to_json(self) -> list:
        return [[list(s), list(t)] for s, t in self.moves]


def legal_attacks(c: GuardConfig) -> list[AttackEvent]:
    """Edges with exactly one guarded endpoint, in canonical order."""
    guarded = c.guarded
    out = []
    for u, v in c.graph.edges:
        if (u in guarded) != (v in guarded):
            out.append(AttackEvent((u, v), u if u in guarded else v))
    return out


def make_attack(c: GuardConfig, edge: Edge) -> AttackEvent:
    """Attack event for an arbitrary graph edge of the configuration."""
    u, v = canonical_edge(*edge)
    guarded = u if u in c.guarded else v
    return AttackEvent((u, v), guarded)


def _forced_matching(graph: GridGraph, sources: list[Coord], targets: list[Coord]
                     ) -> dict[Coord, Coord] | None:
    """Perfect matching source -> target with target in N[source].

    Deterministic augmenting-path search in canonical scan order, so the
    same instance always yields the same matching.
    """
    target_set = set(targets)
    adj = {s: sorted((graph.adjacency[s] | {s}) & target_set) for s in sources}
    match_t: dict[Coord, Coord] = {}

    def augment(s: Coord, seen: set[Coord]) -> bool:
        for t in adj[s]:
            if t in seen:
                continue
            seen.add(t)
            if t not in match_t or augment(match_t[t], seen):
                match_t[t] = s
                return True
        return False

    for s in sorted(sources):
        if not augment(s, set()):
            return None
    return {s: t for t, s in match_t.items()}


def defense_exists(c: GuardConfig, a: AttackEvent, target: frozenset[Coord] | set[Coord]
                   ) -> DefenseMove | None:
    """Defense from ``c`` against ``a`` landing exactly on ``target``.

    The attacked guard is pre-assigned across the attacked edge; the rest
    is a perfect-matching question between the remaining guards and the
    remaining target vertices under the closed-neighborhood relation.
    """
    target = frozenset(target)
    if len(target) != len(c.guarded):
        raise SizeMismatch("target and guard set differ in size")
    u = a.guarded_endpoint
    v = a.unguarded_endpoint
    if u not in c.guarded or v not in target:
        return None
    rest_sources = sorted(c.guarded - {u})
    rest_targets = sorted(target - {v})
    matching = _forced_matching(c.graph, rest_sources, rest_targets)
    if matching is None:
        return None
    matching[u] = v
    return DefenseMove.from_mapping(matching)


def brute_force_defense(c: GuardConfig, a: AttackEvent, target: frozenset[Coord]
                        ) -> bool:
    """Oracle: enumerate injective maps directly.  Test use only."""
    u = a.guarded_endpoint
    v = a.unguarded_endpoint
    if v not in target:
        return False
    sources = sorted(c.guarded - {u})
    targets = sorted(target - {v})
    if len(sources) != len(targets):
        return False
    for perm in permutations(targets):
        if all(t == s or t in c.graph.adjacency[s] for s, t in zip(sources, perm)):
            return True
    return False


def validate_move(c: GuardConfig, a: AttackEvent, m: DefenseMove) -> None:
    """Raise IllegalMove when any defense invariant is violated."""
    mapping = m.mapping
    if set(mapping) != set(c.guarded):
        raise IllegalMove("move domain differs from the guard set")
    if len(set(mapping.values())) != len(mapping):
        raise IllegalMove("two guards sent to one vertex")
    u = a.guarded_endpoint
    if mapping.get(u) != a.unguarded_endpoint:
        raise IllegalMove("attacked edge not traversed")
    adjacency = c.graph.adjacency
    for s, t in mapping.items():
        if t != s and t not in adjacency[s]:
            raise IllegalMove(f"guard at {s} cannot reach {t}")


def apply_round(c: GuardConfig, a: AttackEvent, m: DefenseMove) -> GuardConfig:
    """One round: validate the move, shift the guards, check the cover."""
    validate_move(c, a, m)
    image = m.image
    if not c.graph.is_cover(image):
        raise CoverBroken("defense left an edge with no guarded endpoint")
    return GuardConfig(c.graph, image)


def swap_move(c: GuardConfig, edge: Edge) -> DefenseMove:
    """Defense for an attack on a fully guarded edge: swap its two guards."""
    u, v = edge
    mapping = {s: s for s in c.guarded}
    mapping[u] = v
    mapping[v] = u
    return DefenseMove.from_mapping(mapping)


def round_record(a: AttackEvent, m: DefenseMove, after: GuardConfig) -> dict:
    """Wire form of one round."""
    return {
        "attack": a.to_json(),
        "move": m.to_json(),
        "config_after": [list(v) for v in after.sorted_guards()],
    }
