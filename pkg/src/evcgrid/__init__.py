"""Eternal vertex cover engine for regular grid graphs."""

from .grid import (
    Coord,
    GridGraph,
    GridKind,
    Topology,
    build_finite,
    build_graph,
    build_infinite_adjacency,
    build_oracle,
    build_torus,
)
from .cover import (
    BoundCheck,
    CoverPattern,
    DensityReport,
    check_bounds,
    exact_alpha,
    pattern,
    window_density,
)
from .game import (
    AttackEvent,
    DefenseMove,
    GuardConfig,
    apply_round,
    defense_exists,
    legal_attacks,
)
from .evc_solver import CertReport, EvcSolution, certify_strategy, exact_alpha_inf
from .strategies import applicable_strategies, make_strategy
from .attackers import make_attacker
from .harness import InstanceSpec, MatrixSpec, run_matrix

__all__ = [
    "Coord",
    "GridGraph",
    "GridKind",
    "Topology",
    "build_finite",
    "build_graph",
    "build_infinite_adjacency",
    "build_oracle",
    "build_torus",
    "BoundCheck",
    "CoverPattern",
    "DensityReport",
    "check_bounds",
    "exact_alpha",
    "pattern",
    "window_density",
    "AttackEvent",
    "DefenseMove",
    "GuardConfig",
    "apply_round",
    "defense_exists",
    "legal_attacks",
    "CertReport",
    "EvcSolution",
    "certify_strategy",
    "exact_alpha_inf",
    "applicable_strategies",
    "make_strategy",
    "make_attacker",
    "InstanceSpec",
    "MatrixSpec",
    "run_matrix",
]
