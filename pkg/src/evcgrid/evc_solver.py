"""Exact eternal cover numbers by greatest-fixpoint analysis.

For a guard budget k, the solver enumerates every size-k cover as a
bitmask, then repeatedly deletes configurations that have some legal
attack with no defendable successor among the survivors.  The guard
budget is eternally sufficient exactly when the surviving set is
nonempty; the survivor set doubles as a defender strategy certificate.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from .cover import alpha_size
from .errors import CoverBroken, IllegalMove, Indefensible, NoneFound, TooLarge
from .game import apply_round, legal_attacks, round_record
from .grid import GridGraph

DEFAULT_FIXPOINT_CAP = 16


def _covers_of_size(g: GridGraph, k: int) -> list[int]:
    """All size-k vertex covers as bitmasks, ascending."""
    n = g.n
    out = []
    for combo in combinations(range(n), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if g.is_cover_mask(mask):
            out.append(mask)
    return out


def _attack_pairs(g: GridGraph, mask: int) -> list[tuple[int, int]]:
    """Legal attacks on a mask config as (guarded bit, unguarded bit)."""
    vidx = g.vertex_index
    out = []
    for u, v in g.edges:
        iu, iv = vidx[u], vidx[v]
        gu = (mask >> iu) & 1
        gv = (mask >> iv) & 1
        if gu != gv:
            out.append((iu, iv) if gu else (iv, iu))
    return out


def _defense_feasible(g: GridGraph, s_mask: int, iu: int, iv: int, t_mask: int) -> bool:
    """Forced-edge matching feasibility between two mask configs."""
    if not (t_mask >> iv) & 1:
        return False
    closed = g.adjacency_masks
    sources = []
    probe = s_mask & ~(1 << iu)
    while probe:
        low = probe & -probe
        sources.append(low.bit_length() - 1)
        probe ^= low
    avail = t_mask & ~(1 << iv)
    # quick necessary condition: every target must be reachable from S
    reach = 0
    for i in sources:
        reach |= closed[i] | (1 << i)
    if avail & ~reach:
        return False

    adj = [(closed[i] | (1 << i)) & avail for i in sources]
    match_of_target: dict[int, int] = {}

    def augment(si: int, seen: int) -> tuple[bool, int]:
        probe = adj[si] & ~seen
        while probe:
            low = probe & -probe
            t = low.bit_length() - 1
            probe ^= low
            seen |= low
            owner = match_of_target.get(t)
            if owner is None:
                match_of_target[t] = si
                return True, seen
            ok, seen = augment(owner, seen)
            if ok:
                match_of_target[t] = si
                return True, seen
        return False, seen

    for si in range(len(sources)):
        ok, _ = augment(si, 0)
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class SafeSet:
    """Greatest fixpoint at guard count k: a defender certificate."""

    k: int
    members: frozenset[int]
    vertex_order: tuple

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class EvcSolution:
    alpha: int
    alpha_inf: int
    safe: SafeSet
    elapsed_ms: float


def solve_fixpoint(g: GridGraph, k: int, reverse: bool = False) -> frozenset[int]:
    """Survivor set of size-k covers closed under defendable succession.

    Greatest fixpoints are unique, so the candidate scan order (exposed
    via ``reverse`` for the determinism tests) cannot change the result.
    """
    covers = _covers_of_size(g, k)
    if reverse:
        covers = covers[::-1]
    if not covers:
        return frozenset()
    alive = set(covers)
    attacks = {s: _attack_pairs(g, s) for s in covers}

    # witness[(s, attack)] = currently live defendable successor;
    # scan_pos[(s, attack)] = resume index into `covers` for the next scan.
    witness: dict[tuple[int, int, int], int] = {}
    scan_pos: dict[tuple[int, int, int], int] = {}
    users: dict[int, list[tuple[int, int, int]]] = {}

    def find_witness(key: tuple[int, int, int]) -> bool:
        s, iu, iv = key
        pos = scan_pos.get(key, 0)
        while pos < len(covers):
            t = covers[pos]
            pos += 1
            if t in alive and _defense_feasible(g, s, iu, iv, t):
                witness[key] = t
                scan_pos[key] = pos
                users.setdefault(t, []).append(key)
                return True
        scan_pos[key] = pos
        return False

    dead: list[int] = []
    for s in covers:
        for iu, iv in attacks[s]:
            if not find_witness((s, iu, iv)):
                dead.append(s)
                break

    while dead:
        t = dead.pop()
        if t not in alive:
            continue
        alive.discard(t)
        for key in users.pop(t, []):
            s = key[0]
            if s not in alive or witness.get(key) != t:
                continue
            del witness[key]
            if not find_witness(key):
                dead.append(s)
    return frozenset(alive)


def verify_safe_set(g: GridGraph, safe: SafeSet) -> bool:
    """Re-check the fixpoint property with fresh matching computations."""
    members = sorted(safe.members)
    for s in members:
        if not g.is_cover_mask(s) or bin(s).count("1") != safe.k:
            return False
        for iu, iv in _attack_pairs(g, s):
            if not any(_defense_feasible(g, s, iu, iv, t) for t in members):
                return False
    return True


def exact_alpha_inf(g: GridGraph, k_max: int | None = None,
                    cap: int = DEFAULT_FIXPOINT_CAP) -> EvcSolution:
    """Smallest guard count whose safe set is nonempty.

    Searches k ascending from the cover number; the doubled cover number
    is always sufficient, so the search terminates there at the latest.
    """
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceed the fixpoint cap of {cap}")
    started = time.perf_counter()
    alpha = alpha_size(g)
    upper = 2 * alpha if k_max is None else min(k_max, 2 * alpha)
    if upper < alpha:
        raise NoneFound(f"budget {k_max} is below the cover number {alpha}")
    for k in range(alpha, upper + 1):
        survivors = solve_fixpoint(g, k)
        if survivors:
            safe = SafeSet(k, survivors, g.vertices)
            elapsed = (time.perf_counter() - started) * 1000.0
            return EvcSolution(alpha, k, safe, elapsed)
    raise NoneFound(f"no eternal cover with at most {upper} guards")


# ---------------------------------------------------------------------------
# Strategy certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertFailure:
    phase: str               # "sweep" or "random"
    round_index: int
    attack: list
    error: str
    message: str
    trace: tuple = ()        # recent round records up to the failure

    def to_json_dict(self) -> dict:
        return {
            "phase": self.phase,
            "round": self.round_index,
            "attack": self.attack,
            "error": self.error,
            "message": self.message,
            "trace": list(self.trace),
        }


@dataclass(frozen=True)
class CertReport:
    strategy: str
    guards: int
    sweep_attacks: int
    random_rounds: int
    rounds_survived: int
    seed: int
    failures: tuple[CertFailure, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "guards": self.guards,
            "sweep_attacks": self.sweep_attacks,
            "random_rounds": self.random_rounds,
            "rounds_survived": self.rounds_survived,
            "seed": self.seed,
            "failures": [f.to_json_dict() for f in self.failures],
        }


_TRACE_TAIL = 12


def certify_strategy(g: GridGraph, strategy, rounds: int, seed: int,
                     attacker=None) -> CertReport:
    """Probe a strategy with every one-step attack plus seeded play.

    The default attacker draws uniformly from the legal attacks with the
    given seed; any object with a ``next_attack(config)`` method can take
    its place.  Failures carry the attack, the error and the recent round
    history; they are report contents, never exceptions.
    """
    failures: list[CertFailure] = []
    initial = strategy.initial_config(g)

    sweep = legal_attacks(initial)
    for attack in sweep:
        probe = strategy.clone()
        try:
            move = probe.defend(initial, attack)
            apply_round(initial, attack, move)
        except (Indefensible, CoverBroken, IllegalMove) as exc:
            failures.append(CertFailure("sweep", 0, attack.to_json(),
                                        type(exc).__name__, str(exc)))

    rng = random.Random(seed)
    live = strategy.clone()
    config = initial
    survived = 0
    trace: list[dict] = []
    for i in range(rounds):
        attacks = legal_attacks(config)
        if not attacks:
            break
        if attacker is not None:
            attack = attacker.next_attack(config)
        else:
            attack = attacks[rng.randrange(len(attacks))]
        try:
            move = live.defend(config, attack)
            config = apply_round(config, attack, move)
        except (Indefensible, CoverBroken, IllegalMove) as exc:
            failures.append(CertFailure("random", i, attack.to_json(),
                                        type(exc).__name__, str(exc),
                                        tuple(trace[-_TRACE_TAIL:])))
            break
        survived += 1
        trace.append(round_record(attack, move, config))
        if len(trace) > _TRACE_TAIL:
            trace.pop(0)

    return CertReport(strategy.tag, initial.size, len(sweep), rounds,
                      survived, seed, tuple(failures))
