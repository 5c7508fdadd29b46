"""The adaptive discovery loop: propose an intervention, run its tests,
apply the outcome transitions, close with rule propagation, repeat until the
graph is identified.

Two strategies: ``ip`` solves the exact selection program each round;
``random`` draws a uniformly random viable subset as the baseline.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Protocol

from .dag import Dag, Edge, Pair, pair_of
from .errors import ConfigError, NothingToDoError, RoundCapError
from .ip import CostModel, IpSolution, ObjectiveSpec, build_instance, instance_gain, solve
from .knowledge import (
    AdjacencyTest,
    EdgeClass,
    Outcome,
    OrientationTest,
    PartialGraph,
    Test,
    apply_outcomes,
    transitions_applied,
)
from .meek import meek_closure
from .oracle import SimulatedOracle
from .util import derive_rng


class Oracle(Protocol):
    def answer(self, intervened, tests) -> tuple[Outcome, ...]: ...


@dataclass(frozen=True)
class PlannerConfig:
    strategy: str = "ip"                    # "ip" | "random"
    k_max: int = 1
    budget: float | None = None
    costs: CostModel | None = None
    objective: ObjectiveSpec | None = None
    k_batch: int = 1
    max_rounds: int | None = None           # default 4 * C(n, 2), a runaway guard
    seed: int = 0
    raise_on_round_cap: bool = True
    cap_per_edge: bool = False
    # optional per-round override of (budget, k_max), called with the round
    # index and current state before the proposal is computed
    dynamic_constraints: Callable[[int, PartialGraph], tuple[float | None, int]] | None = None

    def __post_init__(self):
        if self.strategy not in ("ip", "random"):
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.k_max < 1 or self.k_batch < 1:
            raise ConfigError("k_max and k_batch must be >= 1")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ConfigError("max_rounds must be >= 1")

    def round_limits(self, round_index: int, pkg: PartialGraph) -> tuple[float | None, int]:
        if self.dynamic_constraints is not None:
            return self.dynamic_constraints(round_index, pkg)
        return self.budget, self.k_max


@dataclass(frozen=True)
class RoundLog:
    intervention_sets: tuple[frozenset[int], ...]
    tests: tuple[Test, ...]
    outcomes: tuple[Outcome, ...]
    transitioned: tuple[tuple[Pair, EdgeClass, EdgeClass], ...]
    meek_oriented: tuple[Edge, ...]
    ambiguity_after: int

    @property
    def manipulations(self) -> int:
        return sum(len(s) for s in self.intervention_sets)


@dataclass(frozen=True)
class RunRecord:
    rounds: int
    total_manipulations: int
    per_round: tuple[RoundLog, ...]
    terminated: str                       # "success" | "round-cap"
    final: PartialGraph
    config: PlannerConfig

    def to_doc(self) -> dict:
        from .knowledge import to_doc

        return {
            "config": {
                "strategy": self.config.strategy,
                "k_max": self.config.k_max,
                "budget": self.config.budget,
                "objective": self.config.objective.kind.value if self.config.objective else "plain",
                "k_batch": self.config.k_batch,
                "seed": self.config.seed,
                "max_rounds": self.config.max_rounds,
            },
            "rounds": self.rounds,
            "total_manipulations": self.total_manipulations,
            "terminated": self.terminated,
            "per_round": [
                {
                    "interventions": [sorted(s) for s in log.intervention_sets],
                    "tests": [t.id for t in log.tests],
                    "outcomes": [[o.test.id, "present" if o.present else "absent"]
                                 for o in log.outcomes],
                    "transitions": [[list(p), old.value, new.value]
                                    for p, old, new in log.transitioned],
                    "meek_oriented": [list(e) for e in log.meek_oriented],
                    "ambiguity_after": log.ambiguity_after,
                }
                for log in self.per_round
            ],
            "final": to_doc(self.final),
        }


def enabled_tests(pkg: PartialGraph, x) -> list[Test]:
    """Every uncertain pair's test whose intervention context holds under x."""
    x = frozenset(x)
    tests: list[Test] = []
    for i, j in sorted(pkg.unknown):
        if i in x and j not in x:
            tests.append(OrientationTest(i, j))
        elif j in x and i not in x:
            tests.append(OrientationTest(j, i))
        elif i not in x and j not in x:
            tests.append(AdjacencyTest(i, j))
    for i, j in sorted(pkg.semi):
        if i in x and j not in x:
            tests.append(OrientationTest(i, j))
        elif i not in x and j not in x:
            tests.append(AdjacencyTest(*pair_of(i, j)))
    for i, j in sorted(pkg.adjacent):
        if i in x and j not in x:
            tests.append(OrientationTest(i, j))
        elif j in x and i not in x:
            tests.append(OrientationTest(j, i))
    return tests


def _propose_batches(pkg: PartialGraph, config: PlannerConfig,
                     rng: random.Random, round_index: int = 0) -> tuple[frozenset[int], ...]:
    if pkg.resolved:
        raise NothingToDoError("knowledge state is fully resolved")
    budget, k_max = config.round_limits(round_index, pkg)
    if config.strategy == "random":
        viable = sorted(pkg.viable())
        batches = []
        pool = list(viable)
        for _ in range(config.k_batch):
            if not pool:
                batches.append(frozenset())
                continue
            size = rng.randint(1, min(k_max, len(pool)))
            chosen = rng.sample(sorted(pool), size)
            batches.append(frozenset(chosen))
            pool = [v for v in pool if v not in batches[-1]]  # batches are disjoint
        return tuple(batches)
    instance = build_instance(
        pkg, config.costs, k_max=k_max, budget=budget, objective=config.objective,
        k_batch=config.k_batch, cap_per_edge=config.cap_per_edge,
    )
    return solve(instance, rng).batches


def propose(pkg: PartialGraph, config: PlannerConfig, rng: random.Random):
    """Next intervention set (or tuple of per-batch sets when k_batch > 1)."""
    batches = _propose_batches(pkg, config, rng)
    return batches[0] if config.k_batch == 1 else batches


def run_round(pkg: PartialGraph, config: PlannerConfig, oracle: Oracle,
              rng: random.Random, round_index: int = 0) -> tuple[PartialGraph, RoundLog]:
    """One full iteration: propose, test, transition, propagate."""
    batches = _propose_batches(pkg, config, rng, round_index)
    all_tests: list[Test] = []
    all_outcomes: list[Outcome] = []
    current = pkg
    for x in batches:
        tests = enabled_tests(pkg, x)  # contexts evaluated against the round-start state
        outcomes = oracle.answer(x, tests)
        all_tests.extend(tests)
        all_outcomes.extend(outcomes)
        # batch results are analyzed together: a pair resolved by an earlier
        # batch in this round simply ignores later answers about it
        applicable = [o for o in outcomes if _still_applicable(current, o)]
        current = apply_outcomes(current, applicable)
    after_transitions = current
    closed = meek_closure(after_transitions)
    log = RoundLog(
        intervention_sets=batches,
        tests=tuple(all_tests),
        outcomes=tuple(all_outcomes),
        transitioned=tuple(transitions_applied(pkg, after_transitions)),
        meek_oriented=tuple(sorted(closed.known - after_transitions.known)),
        ambiguity_after=closed.ambiguity(),
    )
    return closed, log


def _still_applicable(pkg: PartialGraph, outcome: Outcome) -> bool:
    cls = pkg.class_of(*outcome.test.pair)
    if cls in (EdgeClass.KNOWN, EdgeClass.ABSENT):
        return False
    if cls is EdgeClass.ADJACENT and isinstance(outcome.test, AdjacencyTest):
        return False
    if cls is EdgeClass.SEMI_DIRECTED and isinstance(outcome.test, OrientationTest):
        if (outcome.test.source, outcome.test.target) != pkg.direction(*outcome.test.pair):
            return False
    return True


def run(truth_or_oracle, initial: PartialGraph, config: PlannerConfig) -> RunRecord:
    """Iterate rounds until the state is fully resolved or the round cap hits.

    ``truth_or_oracle`` is either a ground-truth Dag (simulation mode) or any
    object answering ``answer(intervened, tests)`` completely.
    """
    oracle = SimulatedOracle(truth_or_oracle) if isinstance(truth_or_oracle, Dag) else truth_or_oracle
    cap = config.max_rounds
    if cap is None:
        # the floor keeps the guard out of reach of the random baseline's
        # tolerated zero-gain rounds on tiny graphs
        cap = max(20, 4 * math.comb(initial.n, 2))

    pkg = initial
    logs: list[RoundLog] = []
    while not pkg.resolved and len(logs) < cap:
        rng = derive_rng(config.seed, "round", len(logs))
        pkg, log = run_round(pkg, config, oracle, rng, round_index=len(logs))
        logs.append(log)

    terminated = "success" if pkg.resolved else "round-cap"
    record = RunRecord(
        rounds=len(logs),
        total_manipulations=sum(log.manipulations for log in logs),
        per_round=tuple(logs),
        terminated=terminated,
        final=pkg,
        config=config,
    )
    if terminated == "round-cap" and config.raise_on_round_cap:
        raise RoundCapError(
            f"still ambiguous after {cap} rounds (ambiguity {pkg.ambiguity()})", record
        )
    return record


def run_simulation(truth: Dag, config: PlannerConfig,
                   initial: PartialGraph | None = None) -> RunRecord:
    """Run from the truth's essential graph (the standard starting state)."""
    from .mec import cpdag_of

    return run(truth, initial if initial is not None else cpdag_of(truth), config)
