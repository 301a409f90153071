"""Experiment runner: solve, bound-check and certify whole instance lists.

Reports are deterministic: given the same spec and seeds the CSV and
JSON artifacts are byte-identical (wall-clock timings are zeroed unless
explicitly requested).
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .cover import BoundCheck, check_bounds, exact_alpha
from .errors import EvcError
from .evc_solver import (
    DEFAULT_FIXPOINT_CAP,
    CertReport,
    certify_strategy,
    exact_alpha_inf,
)
from .grid import GridGraph, GridKind, Topology, build_graph
from .strategies import applicable_strategies, make_strategy

CSV_COLUMNS = ("kind", "h", "w", "topology", "n_vertices", "n_edges", "alpha",
               "alpha_inf", "strategy", "guards", "rounds", "failures",
               "rho_num", "rho_den", "elapsed_ms")


@dataclass(frozen=True)
class InstanceSpec:
    kind: GridKind
    h: int
    w: int
    topology: Topology = Topology.RECT

    @classmethod
    def from_dict(cls, d: dict) -> "InstanceSpec":
        return cls(GridKind(d["kind"]), int(d["h"]), int(d["w"]),
                   Topology(d.get("topology", "rect")))

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "h": self.h, "w": self.w,
                "topology": self.topology.value}


@dataclass(frozen=True)
class MatrixSpec:
    instances: tuple[InstanceSpec, ...]
    rounds: int = 1000
    seed: int = 0
    alpha_inf_cap: int = DEFAULT_FIXPOINT_CAP

    @classmethod
    def from_dict(cls, d: dict) -> "MatrixSpec":
        return cls(tuple(InstanceSpec.from_dict(i) for i in d.get("instances", ())),
                   int(d.get("rounds", 1000)), int(d.get("seed", 0)),
                   int(d.get("alpha_inf_cap", DEFAULT_FIXPOINT_CAP)))


@dataclass
class SolveReport:
    instance: InstanceSpec
    n_vertices: int = 0
    n_edges: int = 0
    alpha: int | None = None
    alpha_inf: int | None = None
    safe_count: int | None = None
    rho: Fraction | None = None
    bounds: BoundCheck | None = None
    strategies: list[CertReport] = field(default_factory=list)
    error: str | None = None
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        if self.error:
            return False
        if self.bounds is not None and not self.bounds.all_ok:
            return False
        return all(r.ok for r in self.strategies)

    def to_json_dict(self, timings: bool = False) -> dict:
        return {
            "instance": self.instance.to_dict(),
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "alpha": self.alpha,
            "alpha_inf": self.alpha_inf,
            "safe_count": self.safe_count,
            "rho": (f"{self.rho.numerator}/{self.rho.denominator}"
                    if self.rho is not None else None),
            "bounds": self.bounds.to_json_list() if self.bounds else [],
            "strategies": [r.to_json_dict() for r in self.strategies],
            "error": self.error,
            "elapsed_ms": round(self.elapsed_ms, 3) if timings else 0,
        }


def run_instance(spec: InstanceSpec, rounds: int, seed: int,
                 alpha_inf_cap: int) -> SolveReport:
    report = SolveReport(instance=spec)
    started = time.perf_counter()
    try:
        g: GridGraph = build_graph(spec.kind, spec.h, spec.w, spec.topology)
        report.n_vertices = g.n
        report.n_edges = g.m
        alpha, _ = exact_alpha(g)
        report.alpha = alpha
        report.rho = Fraction(alpha, g.n)
        report.bounds = check_bounds(g, alpha)
        if g.n <= alpha_inf_cap:
            sol = exact_alpha_inf(g, cap=alpha_inf_cap)
            report.alpha_inf = sol.alpha_inf
            report.safe_count = sol.safe.size
        for tag in applicable_strategies(g):
            strategy = make_strategy(tag, g)
            report.strategies.append(certify_strategy(g, strategy, rounds, seed))
    except EvcError as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    report.elapsed_ms = (time.perf_counter() - started) * 1000.0
    return report


def run_matrix(spec: MatrixSpec) -> list[SolveReport]:
    """Solve every instance; per-instance errors are recorded, not raised."""
    return [run_instance(i, spec.rounds, spec.seed, spec.alpha_inf_cap)
            for i in spec.instances]


def reports_to_json(reports: list[SolveReport], timings: bool = False) -> str:
    payload = [r.to_json_dict(timings) for r in reports]
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _csv_rows(report: SolveReport, timings: bool):
    base = {
        "kind": report.instance.kind.value,
        "h": report.instance.h,
        "w": report.instance.w,
        "topology": report.instance.topology.value,
        "n_vertices": report.n_vertices,
        "n_edges": report.n_edges,
        "alpha": "" if report.alpha is None else report.alpha,
        "alpha_inf": "" if report.alpha_inf is None else report.alpha_inf,
        "rho_num": "" if report.rho is None else report.rho.numerator,
        "rho_den": "" if report.rho is None else report.rho.denominator,
        "elapsed_ms": round(report.elapsed_ms, 3) if timings else 0,
    }
    if not report.strategies:
        yield {**base, "strategy": "", "guards": "", "rounds": 0, "failures": 0}
        return
    for cert in report.strategies:
        yield {**base, "strategy": cert.strategy, "guards": cert.guards,
               "rounds": cert.rounds_survived, "failures": len(cert.failures)}


def reports_to_csv(reports: list[SolveReport], timings: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        for row in _csv_rows(report, timings):
            writer.writerow(row)
    return buf.getvalue()
