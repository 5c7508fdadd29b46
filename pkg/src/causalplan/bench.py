"""Experiment grids comparing the exact planner against the random baseline.

A grid runs both strategies on the same truth graphs (paired by cell and
seed) and reports per-cell distributions of the extra rounds / extra
manipulated variables the baseline needs.
"""
from __future__ import annotations

import csv
import io
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .dag import Dag
from .errors import ConfigError, RoundCapError, UnpairedError
from .gen_io import ErdosRenyiSpec, erdos_renyi_dag, load_fixture
from .ip import ObjectiveSpec
from .mec import cpdag_of
from .planner import PlannerConfig, run
from .util import derive_seed

CSV_COLUMNS = ("n", "p", "fixture", "k_max", "strategy", "seed",
               "rounds", "manipulations", "terminated")


@dataclass(frozen=True)
class GridSpec:
    ns: tuple[int, ...] = ()
    ps: tuple[float, ...] = ()
    seeds_per_cell: int = 0
    fixtures: tuple[str, ...] = ()
    k_max: tuple[int, ...] = (1,)
    strategies: tuple[str, ...] = ("ip", "random")
    objective: ObjectiveSpec | None = None
    master_seed: int = 0

    def __post_init__(self):
        if not (self.ns and self.ps and self.seeds_per_cell) and not self.fixtures:
            raise ConfigError("grid needs an ER ensemble (ns, ps, seeds_per_cell) or fixtures")
        if self.fixtures and not self.seeds_per_cell:
            object.__setattr__(self, "seeds_per_cell", 1)

    @staticmethod
    def from_doc(doc: dict) -> GridSpec:
        return GridSpec(
            ns=tuple(int(n) for n in doc.get("ns", [])),
            ps=tuple(float(p) for p in doc.get("ps", [])),
            seeds_per_cell=int(doc.get("seeds_per_cell", 0)),
            fixtures=tuple(doc.get("fixtures", [])),
            k_max=tuple(int(k) for k in doc.get("k_max", [1])),
            strategies=tuple(doc.get("strategies", ["ip", "random"])),
            master_seed=int(doc.get("master_seed", 0)),
        )


@dataclass(frozen=True)
class RunRow:
    n: int
    p: float | None
    fixture: str | None
    k_max: int
    strategy: str
    seed: int
    rounds: int
    manipulations: int
    terminated: str

    @property
    def cell(self) -> tuple:
        return (self.n, self.p, self.fixture, self.k_max)

    @property
    def pairing(self) -> tuple:
        return (self.n, self.p, self.fixture, self.k_max, self.seed)


def _cells(spec: GridSpec):
    for name in spec.fixtures:
        for k in spec.k_max:
            yield (None, None, name, k)
    for n in spec.ns:
        for p in spec.ps:
            for k in spec.k_max:
                yield (n, p, None, k)


def _truth_for(spec: GridSpec, cell, seed_index: int) -> Dag:
    n, p, fixture, _ = cell
    if fixture is not None:
        return load_fixture(fixture)
    graph_seed = derive_seed(spec.master_seed, "graph", n, p, seed_index)
    return erdos_renyi_dag(ErdosRenyiSpec(n, p, graph_seed))


def _run_task(args) -> RunRow:
    spec, cell, seed_index, strategy = args
    n, p, fixture, k_max = cell
    truth = _truth_for(spec, cell, seed_index)
    config = PlannerConfig(
        strategy=strategy,
        k_max=k_max,
        objective=spec.objective,
        seed=derive_seed(spec.master_seed, "run", n, p, fixture, k_max, strategy, seed_index),
        raise_on_round_cap=False,
    )
    record = run(truth, cpdag_of(truth), config)
    return RunRow(
        n=truth.n, p=p, fixture=fixture, k_max=k_max, strategy=strategy,
        seed=seed_index, rounds=record.rounds,
        manipulations=record.total_manipulations, terminated=record.terminated,
    )


def run_grid(spec: GridSpec, workers: int = 1) -> list[RunRow]:
    """One row per (cell, seed, strategy); deterministic under the master seed
    regardless of worker count or scheduling."""
    tasks = [
        (spec, cell, seed_index, strategy)
        for cell in _cells(spec)
        for seed_index in range(spec.seeds_per_cell)
        for strategy in spec.strategies
    ]
    if workers <= 1:
        rows = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_task, tasks, chunksize=8))
    rows.sort(key=lambda r: (r.n or 0, r.p or 0.0, r.fixture or "", r.k_max, r.seed, r.strategy))
    return rows


def rows_to_csv(rows: list[RunRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([
            r.n, "" if r.p is None else f"{r.p:g}", r.fixture or "", r.k_max,
            r.strategy, r.seed, r.rounds, r.manipulations, r.terminated,
        ])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[RunRow]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(RunRow(
            n=int(rec["n"]),
            p=float(rec["p"]) if rec["p"] else None,
            fixture=rec["fixture"] or None,
            k_max=int(rec["k_max"]),
            strategy=rec["strategy"],
            seed=int(rec["seed"]),
            rounds=int(rec["rounds"]),
            manipulations=int(rec["manipulations"]),
            terminated=rec["terminated"],
        ))
    return rows


@dataclass(frozen=True)
class Distribution:
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float

    @staticmethod
    def of(values) -> Distribution:
        values = sorted(values)
        if len(values) == 1:
            v = float(values[0])
            return Distribution(v, v, v, v, v)
        q1, med, q3 = statistics.quantiles(values, n=4, method="inclusive")
        return Distribution(float(values[0]), q1, med, q3, float(values[-1]))


@dataclass(frozen=True)
class DeltaSummary:
    """Per cell: distributions of (random - ip) rounds and manipulations over
    paired runs on identical truth graphs."""

    cells: dict[tuple, tuple[Distribution, Distribution]] = field(default_factory=dict)

    def to_text(self) -> str:
        lines = ["cell (n, p, fixture, k_max) | delta_rounds min/q1/med/q3/max"
                 " | delta_variables min/q1/med/q3/max"]
        for cell in sorted(self.cells, key=lambda c: (c[0] or 0, c[1] or 0.0, c[2] or "", c[3])):
            dr, dv = self.cells[cell]
            n, p, fixture, k = cell
            label = fixture if fixture else f"N={n} p={p:g}"
            lines.append(
                f"{label} k_max={k} | "
                f"{dr.minimum:g}/{dr.q1:g}/{dr.median:g}/{dr.q3:g}/{dr.maximum:g} | "
                f"{dv.minimum:g}/{dv.q1:g}/{dv.median:g}/{dv.q3:g}/{dv.maximum:g}"
            )
        return "\n".join(lines) + "\n"


def summarize_delta(rows: list[RunRow]) -> DeltaSummary:
    """Pair rows by (cell, seed) across the two strategies and summarize the
    per-cell delta distributions. Raises UnpairedError on missing partners."""
    by_pairing: dict[tuple, dict[str, RunRow]] = {}
    for r in rows:
        by_pairing.setdefault(r.pairing, {})[r.strategy] = r
    deltas: dict[tuple, tuple[list[int], list[int]]] = {}
    for pairing, pair in sorted(by_pairing.items(), key=lambda kv: str(kv[0])):
        if "ip" not in pair or "random" not in pair:
            raise UnpairedError(f"run pairing {pairing} lacks both strategies")
        rand, ip = pair["random"], pair["ip"]
        dr, dv = deltas.setdefault(rand.cell, ([], []))
        dr.append(rand.rounds - ip.rounds)
        dv.append(rand.manipulations - ip.manipulations)
    return DeltaSummary({
        cell: (Distribution.of(dr), Distribution.of(dv))
        for cell, (dr, dv) in deltas.items()
    })
