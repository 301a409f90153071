from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evcgrid.cover import (
    alpha_size,
    best_translate_count,
    check_bounds,
    exact_alpha,
    pattern,
    window_density,
)
from evcgrid.errors import TooLarge
from evcgrid.grid import GridKind, build_finite, build_oracle, build_torus

GRID_KINDS = (GridKind.HEX3, GridKind.SQUARE4, GridKind.TRI6, GridKind.OCT8)


def brute_alpha(g) -> int:
    """Independent oracle: ascending subset enumeration."""
    for k in range(g.n + 1):
        for combo in combinations(g.vertices, k):
            if g.is_cover(frozenset(combo)):
                return k
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# patterns and densities
# ---------------------------------------------------------------------------

def test_pattern_limits():
    expected = {GridKind.HEX3: Fraction(1, 2), GridKind.SQUARE4: Fraction(1, 2),
                GridKind.TRI6: Fraction(2, 3), GridKind.OCT8: Fraction(3, 4)}
    for kind, limit in expected.items():
        assert window_density(pattern(kind), 12).limit == limit


def test_square_window_5():
    assert window_density(pattern(GridKind.SQUARE4), 5).ratio == Fraction(13, 25)


def test_tri_window_6():
    # frozen by direct count of the excluded congruence class over 6x6
    excluded = sum(1 for x in range(6) for y in range(6) if (x + y) % 3 == 1)
    assert excluded == 12
    d = window_density(pattern(GridKind.TRI6), 6)
    assert (d.selected, d.total) == (24, 36)
    assert d.ratio == Fraction(2, 3)


def test_oct_window_2():
    assert window_density(pattern(GridKind.OCT8), 2).ratio == Fraction(3, 4)


def test_pattern_window_counts():
    d = window_density(pattern(GridKind.SQUARE4), 4)
    assert (d.selected, d.total) == (8, 16)
    d = window_density(pattern(GridKind.TRI6), 3)
    assert (d.selected, d.total) == (6, 9)
    d = window_density(pattern(GridKind.OCT8), 4)
    assert (d.selected, d.total) == (12, 16)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GRID_KINDS), st.integers(min_value=1, max_value=40))
def test_window_density_converges(kind, n):
    p = pattern(kind)
    d = window_density(p, n)
    assert 0 <= d.ratio <= 1
    assert abs(d.ratio - d.limit) <= Fraction(p.period_x * p.period_y, n)


def test_patterns_cover_tori():
    sizes = {GridKind.HEX3: (4, 8, 12), GridKind.SQUARE4: (4, 6, 8, 12),
             GridKind.TRI6: (3, 6, 9, 12), GridKind.OCT8: (4, 6, 8, 12)}
    for kind in GRID_KINDS:
        p = pattern(kind)
        for h in sizes[kind]:
            for w in sizes[kind]:
                if kind is GridKind.HEX3 and h % 4:
                    continue
                g = build_torus(kind, h, w)
                assert g.is_cover(p.select(g.vertices)), (kind, h, w)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GRID_KINDS), st.integers(0, 5), st.integers(0, 5))
def test_pattern_translates_still_cover(kind, dx, dy):
    h = 8 if kind is GridKind.HEX3 else 6
    w = 6
    g = build_torus(kind, h, w)
    # arbitrary translates of the pattern remain covers on compatible tori
    shifted = pattern(kind).shifted(dx, dy)
    assert g.is_cover(shifted.select(g.vertices))


# ---------------------------------------------------------------------------
# exact solver
# ---------------------------------------------------------------------------

def test_alpha_anchor_values():
    assert exact_alpha(build_finite(GridKind.TRI6, 2, 2))[0] == 2
    assert exact_alpha(build_finite(GridKind.TRI6, 2, 3))[0] == 4
    assert exact_alpha(build_finite(GridKind.OCT8, 2, 2))[0] == 3
    assert exact_alpha(build_finite(GridKind.SQUARE4, 2, 2))[0] == 2


def test_square_3x3_alpha_matches_brute_force():
    g = build_finite(GridKind.SQUARE4, 3, 3)
    assert brute_alpha(g) == 4
    assert exact_alpha(g)[0] == 4


def test_witness_is_minimal_cover():
    for g in [build_finite(GridKind.TRI6, 2, 4), build_finite(GridKind.SQUARE4, 3, 4),
              build_finite(GridKind.HEX3, 4, 3), build_oracle(GridKind.CYCLE, 7)]:
        size, witness = exact_alpha(g)
        assert len(witness) == size
        assert g.is_cover(witness)
        for v in witness:
            assert not g.is_cover(witness - {v})


def test_witness_is_lexicographically_smallest():
    for g in [build_finite(GridKind.SQUARE4, 2, 3), build_finite(GridKind.TRI6, 2, 3),
              build_oracle(GridKind.PATH, 6)]:
        size, witness = exact_alpha(g)
        best = min((c for c in combinations(g.vertices, size)
                    if g.is_cover(frozenset(c))))
        assert tuple(sorted(witness)) == best


def test_solver_routes_agree_small():
    # bipartite (matching) vs general (branch and bound) on every instance
    # with at most 20 vertices in the mixed matrix
    graphs = [build_finite(GridKind.SQUARE4, 2, 4), build_finite(GridKind.HEX3, 4, 3),
              build_finite(GridKind.TRI6, 2, 5), build_finite(GridKind.OCT8, 2, 4),
              build_oracle(GridKind.PATH, 9), build_oracle(GridKind.CYCLE, 9),
              build_torus(GridKind.SQUARE4, 4, 4), build_finite(GridKind.TRI6, 3, 4)]
    for g in graphs:
        assert g.n <= 20
        assert alpha_size(g) == brute_alpha(g), g.kind


def test_too_large_non_bipartite():
    g = build_finite(GridKind.TRI6, 2, 3)
    with pytest.raises(TooLarge):
        exact_alpha(g, cap=4)


def test_bipartite_path_has_no_cap():
    g = build_finite(GridKind.SQUARE4, 8, 8)   # 64 vertices, solved by matching
    size, witness = exact_alpha(g, cap=4)
    assert size == 32
    assert g.is_cover(witness)


def test_matching_and_branch_and_bound_agree_on_bipartite():
    from evcgrid.cover import _bipartition, _bipartite_alpha, _bnb_alpha, _SubGraph

    graphs = [build_finite(GridKind.SQUARE4, h, w)
              for h, w in [(2, 2), (2, 5), (3, 4), (4, 5)]]
    graphs += [build_finite(GridKind.HEX3, 4, 3), build_finite(GridKind.HEX3, 6, 3),
               build_oracle(GridKind.PATH, 11), build_oracle(GridKind.CYCLE, 10)]
    for g in graphs:
        assert g.n <= 20
        parts = _bipartition(g)
        assert parts is not None
        via_matching, _ = _bipartite_alpha(g.adjacency, *parts)
        sub = _SubGraph(g.adjacency)
        via_bnb = _bnb_alpha(sub.masks, sub.full, g.n + 1)
        assert via_matching == via_bnb, (g.kind, g.h, g.w)


def test_hex_alpha_is_half():
    for h, w in [(4, 2), (4, 3), (4, 4), (6, 3), (8, 4)]:
        g = build_finite(GridKind.HEX3, h, w)
        assert alpha_size(g) * 2 == g.n


# ---------------------------------------------------------------------------
# bound checks
# ---------------------------------------------------------------------------

def test_bounds_square_3x3_equality():
    g = build_finite(GridKind.SQUARE4, 3, 3)
    bc = check_bounds(g, 4)
    by_name = {e.name: e for e in bc.entries}
    low = by_name["alpha-lower"]
    assert low.lhs == Fraction(4) and low.rhs == Fraction(4) and low.ok
    assert bc.all_ok


def test_bounds_tri_2x4():
    g = build_finite(GridKind.TRI6, 2, 4)
    alpha = alpha_size(g)
    bc = check_bounds(g, alpha)
    by_name = {e.name: e for e in bc.entries}
    assert by_name["rho-lower"].lhs == Fraction(2, 3) - Fraction(1, 12)
    assert bc.all_ok


def test_bounds_oct_2x3():
    g = build_finite(GridKind.OCT8, 2, 3)
    alpha = alpha_size(g)
    assert alpha == 4
    bc = check_bounds(g, alpha)
    by_name = {e.name: e for e in bc.entries}
    assert by_name["rho-lower"].lhs == Fraction(3, 4) - Fraction(1, 12)
    assert by_name["rho-lower"].lhs == Fraction(alpha, g.n)  # met with equality
    assert bc.all_ok


def test_bounds_table_intervals_hold_on_matrix():
    matrix = [(GridKind.SQUARE4, h, w) for h in range(2, 6) for w in range(2, 6)]
    matrix += [(GridKind.HEX3, h, w) for h in (4, 6) for w in (2, 3, 4)]
    matrix += [(GridKind.TRI6, 2, w) for w in range(2, 6)]
    matrix += [(GridKind.TRI6, 3, 3), (GridKind.TRI6, 3, 4)]
    matrix += [(GridKind.OCT8, 2, w) for w in range(2, 6)]
    matrix += [(GridKind.OCT8, 3, 3)]
    for kind, h, w in matrix:
        g = build_finite(kind, h, w)
        alpha = alpha_size(g)
        assert check_bounds(g, alpha).all_ok, (kind, h, w)


def test_pattern_upper_bound_is_constructive():
    for kind, h, w in [(GridKind.TRI6, 2, 2), (GridKind.OCT8, 2, 3),
                       (GridKind.SQUARE4, 3, 3)]:
        g = build_finite(kind, h, w)
        count = best_translate_count(pattern(kind), g)
        assert alpha_size(g) <= count


def test_bound_json_shape():
    g = build_finite(GridKind.SQUARE4, 2, 2)
    entries = check_bounds(g, 2).to_json_list()
    for e in entries:
        assert set(e) == {"name", "lhs", "rhs", "ok"}
        num, den = e["lhs"].split("/")
        int(num), int(den)
