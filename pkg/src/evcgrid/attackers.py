"""Automated attackers for fuzzing defense strategies.

Three flavors: seeded uniform random, a greedy heuristic that minimizes
the defender's count of one-step-defensible follow-up covers, and an
exhaustive minimax that finds a forced win for the attacker whenever the
guard budget is below the eternal cover number.
"""

from __future__ import annotations

import random
from itertools import combinations

from .errors import NoLegalAttack, NotApplicable
from .evc_solver import _attack_pairs, _defense_feasible
from .game import AttackEvent, GuardConfig, defense_exists, legal_attacks
from .grid import GridGraph

ATTACKERS = ("random", "greedy", "minimax")


class UniformRandomAttacker:
    """Uniform choice over legal attacks; deterministic for a seed."""

    tag = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def next_attack(self, c: GuardConfig) -> AttackEvent:
        attacks = legal_attacks(c)
        if not attacks:
            raise NoLegalAttack("every edge is fully guarded")
        return attacks[self._rng.randrange(len(attacks))]


class GreedyPressureAttacker:
    """Attack minimizing the number of one-step-defensible target covers.

    Candidate targets are same-size covers in canonical order, capped, so
    the heuristic stays affordable; documented as a heuristic, not exact.
    """

    tag = "greedy"

    def __init__(self, target_cap: int = 512):
        self.target_cap = target_cap

    def _candidate_targets(self, c: GuardConfig) -> list[frozenset]:
        g = c.graph
        k = c.size
        out = []
        for combo in combinations(g.vertices, k):
            cover = frozenset(combo)
            if g.is_cover(cover):
                out.append(cover)
                if len(out) >= self.target_cap:
                    break
        return out

    def next_attack(self, c: GuardConfig) -> AttackEvent:
        attacks = legal_attacks(c)
        if not attacks:
            raise NoLegalAttack("every edge is fully guarded")
        targets = self._candidate_targets(c)
        best = None
        best_count = None
        for a in attacks:
            count = sum(1 for t in targets if defense_exists(c, a, t) is not None)
            if best_count is None or count < best_count:
                best, best_count = a, count
        assert best is not None
        return best


class MinimaxExhaustiveAttacker:
    """Full alternating search; wins exactly below the eternal number.

    The attacker-win predicate is computed as a least fixpoint: a config
    is lost for the defender within d rounds when some attack leaves
    every defendable successor lost within d-1.  Memoized per graph and
    guard count.
    """

    tag = "minimax"

    def __init__(self, depth: int | None = None, cap: int = 12):
        self.depth = depth
        self.cap = cap
        self._lost_cache: dict[tuple, frozenset[int]] = {}

    def _lost_set(self, g: GridGraph, k: int, depth: int) -> frozenset[int]:
        key = (g.kind, g.h, g.w, g.topology, k, depth)
        cached = self._lost_cache.get(key)
        if cached is not None:
            return cached
        covers = [m for m in _all_cover_masks(g, k)]
        lost: set[int] = set()
        for _ in range(depth):
            grew = False
            for s in covers:
                if s in lost:
                    continue
                for iu, iv in _attack_pairs(g, s):
                    successors = [t for t in covers
                                  if t not in lost and _defense_feasible(g, s, iu, iv, t)]
                    if not successors:
                        lost.add(s)
                        grew = True
                        break
            if not grew:
                break
        result = frozenset(lost)
        self._lost_cache[key] = result
        return result

    def wins_from(self, c: GuardConfig) -> bool:
        g = c.graph
        if g.n > self.cap:
            raise NotApplicable(f"minimax capped at {self.cap} vertices")
        k = c.size
        depth = self.depth if self.depth is not None else _count_covers(g, k) + 1
        lost = self._lost_set(g, k, depth)
        return g.coords_to_mask(c.guarded) in lost

    def next_attack(self, c: GuardConfig) -> AttackEvent:
        attacks = legal_attacks(c)
        if not attacks:
            raise NoLegalAttack("every edge is fully guarded")
        g = c.graph
        if g.n > self.cap:
            raise NotApplicable(f"minimax capped at {self.cap} vertices")
        k = c.size
        depth = self.depth if self.depth is not None else _count_covers(g, k) + 1
        lost = self._lost_set(g, k, depth)
        s = g.coords_to_mask(c.guarded)
        vidx = g.vertex_index
        covers = _all_cover_masks(g, k)
        for a in attacks:
            iu = vidx[a.guarded_endpoint]
            iv = vidx[a.unguarded_endpoint]
            live = [t for t in covers
                    if t not in lost and _defense_feasible(g, s, iu, iv, t)]
            if not live:
                # every defendable successor is already lost for the
                # defender: this attack is on a winning line
                return a
        return attacks[0]


def _all_cover_masks(g: GridGraph, k: int) -> list[int]:
    out = []
    for combo in combinations(range(g.n), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if g.is_cover_mask(mask):
            out.append(mask)
    return out


def _count_covers(g: GridGraph, k: int) -> int:
    return len(_all_cover_masks(g, k))


def make_attacker(tag: str, seed: int = 0, depth: int | None = None):
    if tag == "random":
        return UniformRandomAttacker(seed)
    if tag == "greedy":
        return GreedyPressureAttacker()
    if tag == "minimax":
        return MinimaxExhaustiveAttacker(depth)
    raise NotApplicable(f"unknown attacker tag {tag!r}")
