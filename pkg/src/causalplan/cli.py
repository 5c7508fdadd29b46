"""Command-line interface: gen, stats, simulate, bench, serve, dump-ip."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import GridSpec, rows_to_csv, run_grid, summarize_delta
from .errors import CausalPlanError
from .gen_io import (
    ErdosRenyiSpec,
    erdos_renyi_dag,
    load_edge_list,
    load_fixture,
    save_edge_list,
    structural_stats,
)
from .ip import ObjectiveSpec, build_instance, to_lp_text
from .knowledge import loads as pkg_loads
from .mec import cpdag_of
from .planner import PlannerConfig, run


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must be in [0, 1], got {text}")
    return value


def _load_graph(path: str):
    if path in ("asia", "sachs"):
        return load_fixture(path)
    return load_edge_list(Path(path).read_text())


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _objective(name: str) -> ObjectiveSpec:
    if name == "plain":
        return ObjectiveSpec.plain()
    raise argparse.ArgumentTypeError(
        f"objective {name!r} needs parameters; configure it via the library API"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causalplan",
        description="Adaptive intervention planning for causal DAG discovery",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random DAG as an edge-list file")
    gen.add_argument("--n", type=int, required=True, help="vertex count")
    gen.add_argument("--p", type=_probability, required=True, help="edge probability")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="output path (default stdout)")

    stats = sub.add_parser("stats", help="structural statistics of a graph")
    stats.add_argument("graph", help="edge-list file, or a fixture name (asia, sachs)")

    sim = sub.add_parser("simulate", help="run one discovery simulation to completion")
    src = sim.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="truth graph: edge-list file or fixture name")
    src.add_argument("--n", type=int, help="generate an ER truth graph with --p")
    sim.add_argument("--p", type=_probability, help="edge probability for --n")
    sim.add_argument("--strategy", choices=("ip", "random"), default="ip")
    sim.add_argument("--kmax", type=int, default=1)
    sim.add_argument("--objective", type=_objective, default=ObjectiveSpec.plain(),
                     help="objective kind (plain)")
    sim.add_argument("--budget", type=float, default=None)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", help="write the full run record as JSON here")

    bench = sub.add_parser("bench", help="run a strategy-comparison grid")
    bench.add_argument("--grid", required=True, help="grid spec JSON file")
    bench.add_argument("--out-dir", required=True)
    bench.add_argument("--seed", type=int, default=None, help="override the grid's master seed")
    bench.add_argument("--workers", type=int, default=1)

    serve = sub.add_parser("serve", help="run the interactive advisor service")
    serve.add_argument("--addr", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--data-dir", default=None, help="session event-log directory")
    serve.add_argument("--ui-dir", default=None, help="static UI bundle to serve at /ui")

    dump = sub.add_parser("dump-ip", help="dump one round's program in LP-style text")
    dump.add_argument("pkg", help="partial-graph JSON document")
    dump.add_argument("--kmax", type=int, default=1)
    dump.add_argument("--budget", type=float, default=None)
    dump.add_argument("--out")

    return parser


def _cmd_gen(args) -> int:
    dag = erdos_renyi_dag(ErdosRenyiSpec(args.n, args.p, args.seed))
    _write_out(save_edge_list(dag), args.out)
    return 0


def _cmd_stats(args) -> int:
    s = structural_stats(_load_graph(args.graph))
    print(f"nodes {s.nodes}")
    print(f"edges {s.edges}")
    print(f"min degree {s.min_degree}")
    print(f"avg degree {s.avg_degree:.2f}")
    print(f"max degree {s.max_degree}")
    print(f"stdev degree {s.stdev_degree:.2f}")
    print(f"v-structures {s.v_structures}")
    return 0


def _cmd_simulate(args) -> int:
    if args.graph:
        truth = _load_graph(args.graph)
    else:
        if args.p is None:
            print("--n needs --p", file=sys.stderr)
            return 2
        truth = erdos_renyi_dag(ErdosRenyiSpec(args.n, args.p, args.seed))
    config = PlannerConfig(
        strategy=args.strategy, k_max=args.kmax, budget=args.budget,
        objective=args.objective, seed=args.seed,
    )
    record = run(truth, cpdag_of(truth), config)
    if args.out:
        Path(args.out).write_text(json.dumps(record.to_doc(), indent=2) + "\n")
    print(f"rounds: {record.rounds}")
    print(f"manipulations: {record.total_manipulations}")
    print(f"terminated: {record.terminated}")
    return 0


def _cmd_bench(args) -> int:
    doc = json.loads(Path(args.grid).read_text())
    if args.seed is not None:
        doc["master_seed"] = args.seed
    spec = GridSpec.from_doc(doc)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = run_grid(spec, workers=args.workers)
    csv_path = out_dir / "runs.csv"
    csv_path.write_text(rows_to_csv(rows))
    summary = None
    if {"ip", "random"} <= set(spec.strategies):
        summary = summarize_delta(rows)
        (out_dir / "delta_summary.txt").write_text(summary.to_text())
    print(f"wrote {len(rows)} rows to {csv_path}")
    if summary:
        print(summary.to_text(), end="")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(data_dir=args.data_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.addr, port=args.port, log_level="info")
    return 0


def _cmd_dump_ip(args) -> int:
    pkg = pkg_loads(Path(args.pkg).read_text())
    instance = build_instance(pkg, k_max=args.kmax, budget=args.budget)
    _write_out(to_lp_text(instance), args.out)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "stats": _cmd_stats,
    "simulate": _cmd_simulate,
    "bench": _cmd_bench,
    "serve": _cmd_serve,
    "dump-ip": _cmd_dump_ip,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CausalPlanError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
