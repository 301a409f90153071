"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Every tolerance is pinned here; nothing is deferred to calibration.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations

from evcgrid.cover import exact_alpha, pattern, window_density
from evcgrid.evc_solver import certify_strategy, exact_alpha_inf, verify_safe_set
from evcgrid.game import GuardConfig, brute_force_defense, defense_exists, legal_attacks
from evcgrid.grid import GridKind, Topology, build_finite, build_oracle, build_torus
from evcgrid.harness import InstanceSpec, MatrixSpec, reports_to_csv, reports_to_json, run_matrix
from evcgrid.strategies import make_strategy

CERT_ROUNDS = 10_000


def _line(criterion: int, ok: bool, detail: str) -> None:
    print(f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}")


def test_criterion_1_oracle_alpha_inf():
    started = time.perf_counter()
    for n in range(2, 8):
        sol = exact_alpha_inf(build_oracle(GridKind.PATH, n))
        assert sol.alpha_inf == n - 1, f"P{n}"
    for n in range(3, 9):
        sol = exact_alpha_inf(build_oracle(GridKind.CYCLE, n))
        assert sol.alpha_inf == -(-n // 2), f"C{n}"
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    _line(1, True, f"paths P2..P7 = n-1, cycles C3..C8 = ceil(n/2) "
                   f"({elapsed:.2f}s < 60s)")


def test_criterion_2_grid_alpha_inf_anchors():
    anchors = [(GridKind.SQUARE4, 2, 2, 2), (GridKind.SQUARE4, 2, 3, 3),
               (GridKind.SQUARE4, 3, 3, 5), (GridKind.TRI6, 2, 2, 3)]
    for kind, h, w, expected in anchors:
        started = time.perf_counter()
        sol = exact_alpha_inf(build_finite(kind, h, w))
        elapsed = time.perf_counter() - started
        assert sol.alpha_inf == expected, (kind, h, w)
        assert elapsed < 300.0
    _line(2, True, "square 2x2/2x3/3x3 -> 2/3/5, triangular 2x2 -> 3")


def test_criterion_3_alpha_anchors():
    assert exact_alpha(build_finite(GridKind.TRI6, 2, 2))[0] == 2
    assert exact_alpha(build_finite(GridKind.TRI6, 2, 3))[0] == 4
    assert exact_alpha(build_finite(GridKind.OCT8, 2, 2))[0] == 3
    for h in range(2, 6):
        for w in range(2, 6):
            alpha, _ = exact_alpha(build_finite(GridKind.SQUARE4, h, w))
            assert alpha >= -(-(h * w - 1) // 2), (h, w)
    _line(3, True, "triangular/king anchors exact; square lower bound "
                   "ceil((hw-1)/2) holds for 2<=h,w<=5")


def test_criterion_4_density_convergence():
    limits = {GridKind.HEX3: Fraction(1, 2), GridKind.SQUARE4: Fraction(1, 2),
              GridKind.TRI6: Fraction(2, 3), GridKind.OCT8: Fraction(3, 4)}
    for kind, limit in limits.items():
        p = pattern(kind)
        tolerance_scale = p.period_x * p.period_y
        for n in (6, 12, 24, 48):
            d = window_density(p, n)
            assert d.limit == limit
            assert abs(d.ratio - d.limit) <= Fraction(tolerance_scale, n), (kind, n)
            assert d.ratio == limit, (kind, n)   # multiples of every period
    _line(4, True, "window ratios equal 1/2,1/2,2/3,3/4 exactly at n=6,12,24,48")


def _strategy_matrix():
    shift_all = [(GridKind.SQUARE4, 4, 4), (GridKind.SQUARE4, 12, 10),
                 (GridKind.HEX3, 4, 4), (GridKind.HEX3, 12, 6),
                 (GridKind.TRI6, 6, 6), (GridKind.TRI6, 12, 9),
                 (GridKind.OCT8, 4, 4), (GridKind.OCT8, 12, 10)]
    for kind, h, w in shift_all:
        yield "shift-all", build_torus(kind, h, w)
    for h in (4, 6, 8):
        for w in range(2, 7):
            yield "hex-case", build_finite(GridKind.HEX3, h, w)
    for h in range(2, 7):
        for w in range(h, 7):
            if (h * w) % 2 == 0:
                yield "ham-cycle", build_finite(GridKind.SQUARE4, h, w)
    for h in range(3, 7):
        for w in range(h, 7):
            yield "tri-tile", build_finite(GridKind.TRI6, h, w)
    for w in range(3, 9):
        yield "tri-tile", build_finite(GridKind.TRI6, 2, w)
    for h in range(2, 7):
        for w in range(h, 7):
            yield "oct-shift", build_finite(GridKind.OCT8, h, w)


def test_criterion_5_strategy_soundness_suite():
    started = time.perf_counter()
    count = 0
    for tag, g in _strategy_matrix():
        report = certify_strategy(g, make_strategy(tag, g), CERT_ROUNDS, seed=1729)
        assert report.ok, (tag, g.kind, g.h, g.w, report.failures[:1])
        assert report.rounds_survived == CERT_ROUNDS
        count += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 600.0
    _line(5, True, f"{count} strategy instances, exhaustive sweeps plus "
                   f"{CERT_ROUNDS} seeded rounds each, zero failures "
                   f"({elapsed:.1f}s < 600s)")


def test_criterion_6_guard_count_formulas():
    for h in range(2, 7):
        for w in range(h, 7):
            g = build_finite(GridKind.OCT8, h, w)
            cfg = make_strategy("oct-shift", g).initial_config(g)
            expected = (w // 2) * h + ((w + 1) // 2) * ((h + 1) // 2)
            assert cfg.size == expected, (h, w)
            ratio = Fraction(cfg.size, g.n)
            upper = Fraction(3, 4) + Fraction(1, 2 * h) + Fraction(1, 4 * h * h)
            lower = Fraction(3, 4) - Fraction(1, 4 * w)
            assert lower <= ratio <= upper, (h, w, ratio)

    for h in range(3, 7):
        for w in range(h, 7):
            g = build_finite(GridKind.TRI6, h, w)
            cfg = make_strategy("tri-tile", g).initial_config(g)
            h3, hr = divmod(h, 3)
            w3, wr = divmod(w, 3)
            expected = 6 * h3 * w3 + 3 * h3 * wr + 3 * w3 * hr + hr * wr
            assert cfg.size == expected, (h, w)
            ratio = Fraction(cfg.size, g.n)
            upper = Fraction(2, 3) + Fraction(4, h) + Fraction(4, h * h)
            lower = Fraction(2, 3) - Fraction(1, 3 * w)
            assert lower <= ratio <= upper, (h, w, ratio)
    for w in range(3, 9):
        g = build_finite(GridKind.TRI6, 2, w)
        cfg = make_strategy("tri-tile", g).initial_config(g)
        w3, wr = divmod(w, 3)
        assert cfg.size == 4 * w3 + 2 * wr, w
        ratio = Fraction(cfg.size, g.n)
        assert Fraction(2, 3) - Fraction(1, 3 * w) <= ratio \
            <= Fraction(2, 3) + Fraction(2, w), w

    for h in (4, 6, 8):
        for w in range(2, 7):
            g = build_finite(GridKind.HEX3, h, w)
            cfg = make_strategy("hex-case", g).initial_config(g)
            assert cfg.size in (g.n // 2, (g.n + 1) // 2), (h, w)
            assert Fraction(cfg.size, g.n) == Fraction(1, 2), (h, w)
    _line(6, True, "king/triangular/hexagonal initial guard formulas exact; "
                   "all ratios inside the published intervals")


def test_criterion_7_defense_oracle_equivalence():
    graphs = [build_oracle(GridKind.PATH, n) for n in range(3, 9)]
    graphs += [build_oracle(GridKind.CYCLE, n) for n in range(4, 9)]
    graphs += [build_finite(GridKind.SQUARE4, 2, 3), build_finite(GridKind.SQUARE4, 2, 4),
               build_finite(GridKind.SQUARE4, 3, 3), build_finite(GridKind.TRI6, 2, 2),
               build_finite(GridKind.TRI6, 2, 3), build_finite(GridKind.TRI6, 2, 4),
               build_finite(GridKind.TRI6, 3, 3), build_finite(GridKind.OCT8, 2, 2),
               build_finite(GridKind.OCT8, 2, 3), build_finite(GridKind.OCT8, 2, 4),
               build_finite(GridKind.OCT8, 3, 3), build_finite(GridKind.HEX3, 4, 2)]
    rng = random.Random(20260810)
    checked = 0
    for g in graphs:
        assert g.n <= 10
        alpha, _ = exact_alpha(g)
        by_size: dict[int, list[frozenset]] = {}
        for k in range(alpha, min(2 * alpha, g.n) + 1):
            covers = [frozenset(c) for c in combinations(g.vertices, k)
                      if g.is_cover(frozenset(c))]
            if covers:
                by_size[k] = covers
        for _ in range(200):
            k = rng.choice(sorted(by_size))
            covers = by_size[k]
            config = GuardConfig(g, covers[rng.randrange(len(covers))])
            attacks = legal_attacks(config)
            if not attacks:
                continue
            attack = attacks[rng.randrange(len(attacks))]
            target = covers[rng.randrange(len(covers))]
            got = defense_exists(config, attack, target)
            expect = brute_force_defense(config, attack, target)
            assert (got is not None) == expect, (g.kind, g.h, g.w)
            checked += 1
    _line(7, True, f"matching agrees with brute-force enumeration on "
                   f"{checked} random triples across {len(graphs)} graphs")


def test_criterion_8_fixpoint_sanity():
    graphs = [build_oracle(GridKind.PATH, n) for n in range(2, 8)]
    graphs += [build_oracle(GridKind.CYCLE, n) for n in range(3, 9)]
    graphs += [build_finite(GridKind.SQUARE4, 2, 2), build_finite(GridKind.SQUARE4, 2, 3),
               build_finite(GridKind.SQUARE4, 3, 3), build_finite(GridKind.TRI6, 2, 2),
               build_finite(GridKind.TRI6, 2, 3), build_finite(GridKind.OCT8, 2, 2),
               build_finite(GridKind.HEX3, 4, 2)]
    for g in graphs:
        sol = exact_alpha_inf(g)
        assert sol.alpha <= sol.alpha_inf <= 2 * sol.alpha, (g.kind, g.h, g.w)
        assert verify_safe_set(g, sol.safe), (g.kind, g.h, g.w)
    _line(8, True, f"alpha <= alpha_inf <= 2*alpha and certificates re-verified "
                   f"on {len(graphs)} instances")


def test_criterion_9_run_matrix_determinism():
    spec = MatrixSpec(instances=(
        InstanceSpec(GridKind.TRI6, 2, 2), InstanceSpec(GridKind.TRI6, 2, 3),
        InstanceSpec(GridKind.OCT8, 2, 2), InstanceSpec(GridKind.SQUARE4, 3, 3),
        InstanceSpec(GridKind.SQUARE4, 4, 4, Topology.TORUS),
    ), rounds=400, seed=99)
    first = run_matrix(spec)
    second = run_matrix(spec)
    json_a, json_b = reports_to_json(first), reports_to_json(second)
    csv_a, csv_b = reports_to_csv(first), reports_to_csv(second)
    assert json_a.encode() == json_b.encode()
    assert csv_a.encode() == csv_b.encode()
    _line(9, True, "run_matrix twice with identical spec/seed: byte-identical "
                   "CSV and JSON")
