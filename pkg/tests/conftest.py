"""Shared generators and independent reference oracles for the test suite."""
from __future__ import annotations

import itertools
import random

from causalplan import Dag, PartialGraph, pair_of
from causalplan.ip import IpInstance, ObjectiveKind, cost_of


def random_dag(rng: random.Random, n: int, p: float) -> Dag:
    edges = frozenset(
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    )
    return Dag(n, edges)


def random_any_pkg(rng: random.Random, n: int, p_edge: float = 0.5) -> PartialGraph:
    """Arbitrary knowledge state: classes scattered over the pairs of a random
    DAG so the KNOWN part stays acyclic."""
    truth = random_dag(rng, n, p_edge)
    known, adjacent, semi, unknown = [], [], [], []
    for i, j in itertools.combinations(range(n), 2):
        roll = rng.random()
        if (i, j) in truth.edges:
            if roll < 0.20:
                known.append((i, j))
            elif roll < 0.50:
                adjacent.append((i, j))
            elif roll < 0.70:
                semi.append((i, j) if rng.random() < 0.5 else (j, i))
            elif roll < 0.90:
                unknown.append((i, j))
        else:
            if roll < 0.25:
                unknown.append((i, j))
            elif roll < 0.40:
                semi.append((i, j) if rng.random() < 0.5 else (j, i))
    return PartialGraph.build(n, known=known, adjacent=adjacent, semi=semi, unknown=unknown)


def random_consistent_pkg(rng: random.Random, truth: Dag) -> PartialGraph:
    """Knowledge state consistent with the given truth graph."""
    known, adjacent, semi, unknown = [], [], [], []
    for i, j in itertools.combinations(range(truth.n), 2):
        roll = rng.random()
        if pair_of(i, j) in truth.skeleton:
            edge = (i, j) if (i, j) in truth.edges else (j, i)
            if roll < 0.25:
                known.append(edge)
            elif roll < 0.55:
                adjacent.append((i, j))
            elif roll < 0.75:
                semi.append(edge)  # candidate matches the true direction
            else:
                unknown.append((i, j))
        else:
            if roll < 0.35:
                unknown.append((i, j))
            elif roll < 0.55:
                semi.append((i, j) if rng.random() < 0.5 else (j, i))
            # otherwise ABSENT, which is consistent for a non-edge
    return PartialGraph.build(n=truth.n, known=known, adjacent=adjacent, semi=semi, unknown=unknown)


# --- independent gain oracle: literal per-edge indicator enumeration ---

def enumerated_gain(instance: IpInstance, x: frozenset[int]) -> float:
    """Maximize the update indicators by enumerating every binary assignment
    satisfying the activation inequalities, one uncertain edge at a time."""

    def x_of(v: int) -> int:
        return 1 if v in x else 0

    total = 0.0
    for (i, j), w in zip(instance.unknown_pairs, instance.w_unknown):
        best = 0
        for o1, o2, a, idu in itertools.product((0, 1), repeat=4):
            if o1 <= x_of(i) and o1 <= 1 - x_of(j) \
                    and o2 <= x_of(j) and o2 <= 1 - x_of(i) \
                    and a <= 1 - x_of(i) and a <= 1 - x_of(j) \
                    and idu <= o1 + o2 + a:
                best = max(best, idu)
        total += w * best
    for (i, j), w in zip(instance.semi_edges, instance.w_semi):
        best = 0
        for o, a, ids in itertools.product((0, 1), repeat=3):
            if o <= x_of(i) and o <= 1 - x_of(j) \
                    and a <= 1 - x_of(i) and a <= 1 - x_of(j) \
                    and ids <= o + a:
                best = max(best, ids)
        total += w * best
    for (i, j), w in zip(instance.adjacent_pairs, instance.w_adjacent):
        best = 0
        for o1, o2, ida in itertools.product((0, 1), repeat=3):
            if o1 <= x_of(i) and o1 <= 1 - x_of(j) \
                    and o2 <= x_of(j) and o2 <= 1 - x_of(i) \
                    and ida <= o1 + o2:
                best = max(best, ida)
        total += w * best
    if instance.objective.kind is ObjectiveKind.COST_PENALTY:
        total -= instance.objective.penalty * cost_of(x, instance.costs, instance.viable)
    return total
