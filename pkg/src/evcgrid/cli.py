"""Command-line interface.

Subcommands: gen, cover, solve-alpha, solve-evc, certify, report, serve.
All JSON output is canonical (sorted keys, no spaces) so artifacts are
byte-exact across runs.  Exit status is 0 only when nothing failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .cover import check_bounds, exact_alpha, pattern, window_density
from .errors import EvcError
from .evc_solver import certify_strategy, exact_alpha_inf
from .grid import GridKind, Topology, build_graph
from .harness import MatrixSpec, reports_to_csv, reports_to_json, run_matrix
from .strategies import make_strategy


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in GridKind])
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--topology", choices=[t.value for t in Topology],
                   default="rect")


def _graph_from(args):
    return build_graph(GridKind(args.kind), args.h, args.w,
                       Topology(args.topology))


def cmd_gen(args) -> int:
    print(_dump(_graph_from(args).to_json_dict()))
    return 0


def cmd_cover(args) -> int:
    p = pattern(GridKind(args.kind))
    reports = []
    for n in args.n:
        d = window_density(p, n)
        reports.append({
            "window_n": d.window_n,
            "selected": d.selected,
            "total": d.total,
            "ratio": f"{d.ratio.numerator}/{d.ratio.denominator}",
            "limit": f"{d.limit.numerator}/{d.limit.denominator}",
        })
    print(_dump(reports))
    return 0


def cmd_solve_alpha(args) -> int:
    g = _graph_from(args)
    alpha, witness = exact_alpha(g)
    bounds = check_bounds(g, alpha)
    print(_dump({
        "alpha": alpha,
        "witness": [list(v) for v in sorted(witness)],
        "bounds": bounds.to_json_list(),
    }))
    return 0 if bounds.all_ok else 1


def cmd_solve_evc(args) -> int:
    g = _graph_from(args)
    sol = exact_alpha_inf(g, k_max=args.k_max, cap=args.cap)
    print(_dump({
        "alpha": sol.alpha,
        "alpha_inf": sol.alpha_inf,
        "safe_count": sol.safe.size,
        "elapsed_ms": round(sol.elapsed_ms, 3),
    }))
    return 0


def cmd_certify(args) -> int:
    g = _graph_from(args)
    strategy = make_strategy(args.strategy, g)
    attacker = None
    if args.attacker != "random":
        from .attackers import make_attacker

        attacker = make_attacker(args.attacker, seed=args.seed)
    report = certify_strategy(g, strategy, args.rounds, args.seed, attacker)
    print(_dump(report.to_json_dict()))
    return 0 if report.ok else 1


def cmd_report(args) -> int:
    spec = MatrixSpec.from_dict(json.loads(Path(args.spec).read_text()))
    reports = run_matrix(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    formats = args.format.split(",")
    if "json" in formats:
        (out / "report.json").write_text(reports_to_json(reports, args.timings))
    if "csv" in formats:
        (out / "report.csv").write_text(reports_to_csv(reports, args.timings))
    ok = all(r.ok for r in reports)
    print(_dump({"instances": len(reports), "ok": ok}))
    return 0 if ok else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    addr = args.addr or os.environ.get("EVC_LISTEN_ADDR", "127.0.0.1:8000")
    host, _, port = addr.rpartition(":")
    data_dir = args.data_dir or os.environ.get("EVC_DATA_DIR", "./evc-data")
    app = create_app(Path(data_dir))
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evcgrid")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="construct a graph and print its JSON")
    _add_graph_args(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cover", help="pattern window densities")
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in GridKind if k.is_grid])
    p.add_argument("--n", type=int, nargs="+", default=[6, 12, 24])
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("solve-alpha", help="exact minimum vertex cover")
    _add_graph_args(p)
    p.set_defaults(func=cmd_solve_alpha)

    p = sub.add_parser("solve-evc", help="exact eternal cover number")
    _add_graph_args(p)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--cap", type=int, default=16)
    p.set_defaults(func=cmd_solve_evc)

    p = sub.add_parser("certify", help="sweep plus seeded play on a strategy")
    _add_graph_args(p)
    p.add_argument("--strategy", required=True)
    p.add_argument("--attacker", default="random",
                   choices=["random", "greedy", "minimax"])
    p.add_argument("--rounds", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("report", help="run an experiment matrix")
    p.add_argument("--spec", required=True, help="JSON matrix spec file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", default="json,csv")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings (breaks byte-determinism)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the session service")
    p.add_argument("--addr", default=None, help="host:port (EVC_LISTEN_ADDR)")
    p.add_argument("--data-dir", default=None, help="session log dir (EVC_DATA_DIR)")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EvcError as exc:
        print(_dump({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
