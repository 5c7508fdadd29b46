import itertools
import random

import pytest

from causalplan import (
    CostModel,
    ObjectiveSpec,
    PartialGraph,
    build_instance,
    cost_of,
    cpdag_of,
    gain,
    pair_of,
    solve,
    solve_bruteforce,
    to_lp_text,
    validate_dag,
)
from causalplan.errors import ConfigError, InfeasibleError, TooLargeError
from causalplan.ip import ObjectiveKind, instance_gain

from conftest import enumerated_gain, random_any_pkg

CHAIN_ESSENTIAL = PartialGraph.build(3, adjacent=[(0, 1), (1, 2)])


def _random_costs(rng, n, with_interactions=True):
    subsets = {}
    if with_interactions and n >= 2:
        for _ in range(rng.randint(0, 2)):
            size = rng.randint(2, min(3, n))
            subsets[frozenset(rng.sample(range(n), size))] = round(rng.uniform(-2, 6), 2)
    return CostModel(
        tuple(round(rng.uniform(0, 3), 2) for _ in range(n)),
        tuple(round(rng.uniform(0, 1), 2) for _ in range(n)),
        tuple(subsets.items()),
    )


def _random_objective(rng, pkg):
    kind = rng.choice(["plain", "weighted", "targeted", "cost-penalty"])
    if kind == "plain":
        return ObjectiveSpec.plain()
    if kind == "weighted":
        return ObjectiveSpec.weighted(
            unknown={p: round(rng.uniform(0, 3), 1) for p in pkg.unknown},
            semi={pair_of(*e): round(rng.uniform(0, 3), 1) for e in pkg.semi},
            adjacent={p: round(rng.uniform(0, 3), 1) for p in pkg.adjacent},
        )
    if kind == "targeted":
        pairs = sorted(pkg.unresolved_pairs())
        return ObjectiveSpec.targeted(rng.sample(pairs, rng.randint(0, len(pairs))))
    return ObjectiveSpec.cost_penalty(round(rng.uniform(0, 1), 2))


# --- build_instance ---

def test_resolved_state_has_empty_viable_set():
    inst = build_instance(PartialGraph.build(3, known=[(0, 1), (1, 2)]), k_max=2)
    assert inst.viable == ()
    assert not inst.orientation_vars and not inst.adjacency_vars


def test_chain_essential_variable_census():
    inst = build_instance(CHAIN_ESSENTIAL, k_max=1)
    assert inst.viable == (0, 1, 2)
    assert sorted(inst.orientation_vars) == [(0, 1), (1, 0), (1, 2), (2, 1)]
    assert inst.adjacency_vars == []
    assert len(inst.adjacent_pairs) == 2  # one update indicator per adjacent pair


def test_semi_edge_variable_census():
    inst = build_instance(PartialGraph.build(2, semi=[(0, 1)]), k_max=1)
    assert inst.orientation_vars == [(0, 1)]
    assert inst.adjacency_vars == [(0, 1)]
    assert len(inst.semi_edges) == 1


def test_config_validation():
    with pytest.raises(ConfigError):
        build_instance(CHAIN_ESSENTIAL, k_max=0)
    with pytest.raises(ConfigError):
        ObjectiveSpec.cost_penalty(-1.0)
    with pytest.raises(ConfigError):
        ObjectiveSpec.weighted(adjacent={(0, 1): -2.0})


# --- gain: frozen examples plus the indicator-enumeration oracle ---

def test_gain_adjacent_pair():
    pkg = PartialGraph.build(2, adjacent=[(0, 1)])
    assert gain(pkg, {0}) == 1
    assert gain(pkg, {0, 1}) == 0
    assert gain(pkg, set()) == 0


def test_gain_semi_edge_via_adjacency_test():
    pkg = PartialGraph.build(2, semi=[(0, 1)])
    assert gain(pkg, set()) == 1
    assert gain(pkg, {0}) == 1
    assert gain(pkg, {1}) == 0


def test_gain_unknown_pair():
    pkg = PartialGraph.build(2, unknown=[(0, 1)])
    assert gain(pkg, {0, 1}) == 0
    assert gain(pkg, {0}) == 1
    assert gain(pkg, {1}) == 1
    assert gain(pkg, set()) == 1


def test_gain_matches_indicator_enumeration():
    rng = random.Random(13)
    for _ in range(120):
        pkg = random_any_pkg(rng, rng.randint(2, 7))
        if len(pkg.unresolved_pairs()) > 12:
            continue
        costs = _random_costs(rng, pkg.n)
        objective = _random_objective(rng, pkg)
        inst = build_instance(pkg, costs, k_max=pkg.n, objective=objective)
        viable = list(inst.viable)
        for _ in range(6):
            x = frozenset(rng.sample(viable, rng.randint(0, len(viable))))
            assert instance_gain(inst, x) == pytest.approx(enumerated_gain(inst, x), abs=1e-9)


# --- cost_of ---

def test_cost_of_examples():
    costs = CostModel.uniform(4, intervention=1.0, observation=0.0)
    assert cost_of({0, 1}, costs, (0, 1, 2, 3)) == 2

    joint = CostModel((1.0, 1.0), (0.0, 0.0), ((frozenset({0, 1}), 8.0),))
    assert cost_of({0, 1}, joint, (0, 1)) == 10.0

    observing = CostModel.uniform(4, intervention=1.0, observation=0.5)
    assert cost_of(set(), observing, (0, 1, 2, 3)) == 2.0


# --- solve: frozen examples ---

def test_solve_chain_picks_middle_vertex():
    sol = solve(build_instance(CHAIN_ESSENTIAL, k_max=1), random.Random(0))
    assert sol.x == {1} and sol.objective_value == 2


def test_solve_resolved_state():
    sol = solve(build_instance(PartialGraph.build(2, known=[(0, 1)]), k_max=1))
    assert sol.x == frozenset() and sol.objective_value == 0


def test_interaction_budget_example():
    pkg = PartialGraph.build(2, adjacent=[(0, 1)])
    costs = CostModel((1.0, 1.0), (0.0, 0.0), ((frozenset({0, 1}), 8.0),))
    sol = solve(build_instance(pkg, costs, k_max=2, budget=5.0), random.Random(3))
    assert len(sol.x) == 1 and sol.objective_value == 1
    # with budget 10 the joint intervention becomes feasible at cost exactly 10
    bf10 = solve_bruteforce(build_instance(pkg, costs, k_max=2, budget=10.0))
    assert cost_of({0, 1}, costs, (0, 1)) == 10.0
    feasible = {x for x in (frozenset({0}), frozenset({1}), frozenset({0, 1}), frozenset())
                if cost_of(x, costs, (0, 1)) <= 10.0}
    assert frozenset({0, 1}) in feasible
    assert bf10.objective_value == 1


def test_observation_costs_alone_can_be_infeasible():
    pkg = PartialGraph.build(2, adjacent=[(0, 1)])
    costs = CostModel.uniform(2, intervention=1.0, observation=4.0)
    with pytest.raises(InfeasibleError):
        solve(build_instance(pkg, costs, k_max=1, budget=3.0))
    with pytest.raises(InfeasibleError):
        solve_bruteforce(build_instance(pkg, costs, k_max=1, budget=3.0))


# --- brute force: frozen examples ---

def test_bruteforce_chain():
    res = solve_bruteforce(build_instance(CHAIN_ESSENTIAL, k_max=1))
    assert res.objective_value == 2 and res.optima == (frozenset({1}),)


def test_bruteforce_two_disjoint_edges():
    pkg = PartialGraph.build(4, adjacent=[(0, 1), (2, 3)])
    res = solve_bruteforce(build_instance(pkg, k_max=2))
    assert res.objective_value == 2
    assert set(res.optima) == {
        frozenset({0, 2}), frozenset({0, 3}), frozenset({1, 2}), frozenset({1, 3})
    }


def test_bruteforce_empty_viable():
    res = solve_bruteforce(build_instance(PartialGraph.build(2, known=[(0, 1)]), k_max=1))
    assert res.objective_value == 0 and res.optima == (frozenset(),)


def test_bruteforce_size_guard():
    pkg = PartialGraph.build(30, adjacent=[(i, i + 1) for i in range(29)])
    with pytest.raises(TooLargeError):
        solve_bruteforce(build_instance(pkg, k_max=2))


# --- solver/oracle agreement over mixed random instances ---

def test_solver_agrees_with_bruteforce_on_500_instances():
    rng = random.Random(2024)
    agreements = 0
    while agreements < 500:
        n = rng.randint(2, 8)
        pkg = random_any_pkg(rng, n)
        costs = _random_costs(rng, n)
        objective = _random_objective(rng, pkg)
        budget = None if rng.random() < 0.5 else round(rng.uniform(0, 3 * n), 2)
        inst = build_instance(pkg, costs, k_max=rng.randint(1, 4), budget=budget,
                              objective=objective)
        try:
            reference = solve_bruteforce(inst)
        except InfeasibleError:
            with pytest.raises(InfeasibleError):
                solve(inst, random.Random(agreements))
            continue
        sol = solve(inst, random.Random(agreements))
        assert sol.objective_value == pytest.approx(reference.objective_value, abs=1e-7)
        assert any(sol.x == opt for opt in reference.optima) or \
            instance_gain(inst, sol.x) == pytest.approx(reference.objective_value, abs=1e-7)
        if inst.budget is not None:
            assert cost_of(sol.x, costs, inst.viable) <= inst.budget + 1e-9
        agreements += 1


def test_tie_breaking_is_uniform_over_optima():
    pkg = PartialGraph.build(4, adjacent=[(0, 1), (2, 3)])
    inst = build_instance(pkg, k_max=2)
    reference = set(solve_bruteforce(inst).optima)
    counts = {opt: 0 for opt in reference}
    trials = 4000
    for t in range(trials):
        counts[solve(inst, random.Random(t)).x] += 1
    assert set(counts) == reference
    for c in counts.values():  # 4 optima, expect ~1000 each
        assert abs(c - trials / len(reference)) < 150


def test_monotone_budget_relaxation():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 6)
        pkg = random_any_pkg(rng, n)
        costs = _random_costs(rng, n)
        b1 = round(rng.uniform(0, 2 * n), 2)
        b2 = b1 + round(rng.uniform(0, n), 2)
        values = []
        for b in (b1, b2):
            inst = build_instance(pkg, costs, k_max=rng.randint(1, 3), budget=b)
            try:
                values.append(solve_bruteforce(inst).objective_value)
            except InfeasibleError:
                values.append(float("-inf"))
        assert values[0] <= values[1] + 1e-9


def test_interaction_linearization():
    # Y_S = 1 exactly when S is fully intervened, for every X over a small set
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(2, 6)
        s = frozenset(rng.sample(range(n), rng.randint(2, n)))
        for size in range(n + 1):
            for x in itertools.combinations(range(n), size):
                x = frozenset(x)
                valid_y = [
                    y for y in (0, 1)
                    if all(y <= (1 if v in x else 0) for v in s)
                    and y >= sum(1 for v in s if v in x) - (len(s) - 1)
                ]
                assert valid_y == [1 if s <= x else 0]


def test_prohibitive_interaction_cost():
    pkg = PartialGraph.build(3, adjacent=[(0, 1), (1, 2)])
    budget = 6.0
    costs = CostModel.uniform(3, intervention=1.0, observation=0.0,
                              interactions=[({0, 2}, budget + 1.0)])
    res = solve_bruteforce(build_instance(pkg, costs, k_max=3, budget=budget))
    assert all(not {0, 2} <= x for x in res.optima)
    for size in range(4):
        for x in itertools.combinations(range(3), size):
            if {0, 2} <= set(x):
                assert cost_of(set(x), costs, (0, 1, 2)) > budget


# --- batches ---

def _batched_bruteforce(inst):
    """Reference for k_batch > 1: enumerate disjoint batch assignments."""
    best, optima = float("-inf"), []
    viable = inst.viable
    budget = inst.batch_budgets or (
        None if inst.budget is None else (inst.budget,) * inst.k_batch
    )
    for assignment in itertools.product(range(inst.k_batch + 1), repeat=len(viable)):
        batches = tuple(
            frozenset(v for v, a in zip(viable, assignment) if a == b + 1)
            for b in range(inst.k_batch)
        )
        if any(len(b) > inst.k_max for b in batches):
            continue
        if budget is not None and any(
            cost_of(b, inst.costs, viable) > budget[k] + 1e-9
            for k, b in enumerate(batches)
        ):
            continue
        if inst.total_budget is not None:
            total = sum(
                sum(inst.costs.intervention[v] for v in b)
                + sum(c for s, c in inst.costs.interactions if s <= b)
                for b in batches
            )
            if total > inst.total_budget + 1e-9:
                continue
        value = instance_gain(inst, batches)
        if value > best + 1e-9:
            best, optima = value, [batches]
        elif abs(value - best) <= 1e-9:
            optima.append(batches)
    return best, optima


def test_batched_solver_agrees_with_enumeration():
    rng = random.Random(71)
    for trial in range(40):
        n = rng.randint(2, 5)
        pkg = random_any_pkg(rng, n)
        costs = _random_costs(rng, n)
        inst = build_instance(
            pkg, costs, k_max=rng.randint(1, 2), k_batch=rng.randint(2, 3),
            budget=None if rng.random() < 0.6 else round(rng.uniform(1, 2 * n), 2),
            cap_per_edge=rng.random() < 0.3,
        )
        best, optima = _batched_bruteforce(inst)
        if not optima:
            with pytest.raises(InfeasibleError):
                solve(inst, random.Random(trial))
            continue
        sol = solve(inst, random.Random(trial))
        assert sol.objective_value == pytest.approx(best, abs=1e-7)
        assert instance_gain(inst, sol.batches) == pytest.approx(best, abs=1e-7)
        assert len(set().union(*sol.batches)) == sum(len(b) for b in sol.batches)


def test_per_edge_cap_counts_each_edge_once():
    pkg = PartialGraph.build(2, unknown=[(0, 1)])
    capped = build_instance(pkg, k_max=1, k_batch=2, cap_per_edge=True)
    plain = build_instance(pkg, k_max=1, k_batch=2)
    batches = (frozenset({0}), frozenset({1}))
    assert instance_gain(plain, batches) == 2  # the same pair counts per batch
    assert instance_gain(capped, batches) == 1


def test_total_budget_limits_interventions_across_batches():
    pkg = PartialGraph.build(4, adjacent=[(0, 1), (2, 3)])
    costs = CostModel.uniform(4, intervention=1.0, observation=0.0)
    inst = build_instance(pkg, costs, k_max=1, k_batch=2, total_budget=1.0)
    sol = solve(inst, random.Random(0))
    assert sum(len(b) for b in sol.batches) <= 1
    assert sol.objective_value == 1


# --- LP dump ---

def test_lp_dump_chain_census():
    text = to_lp_text(build_instance(CHAIN_ESSENTIAL, k_max=1))
    assert text.count("O_") >= 4
    for name in ("O_0_1", "O_1_0", "O_1_2", "O_2_1", "IDA_0_1", "IDA_1_2"):
        assert name in text
    assert "IDU_" not in text and "IDS_" not in text
    assert "Maximize" in text and "Subject To" in text and "Binary" in text


def test_lp_dump_mentions_budget_and_interactions():
    pkg = PartialGraph.build(2, adjacent=[(0, 1)])
    costs = CostModel((1.0, 1.0), (0.0, 0.0), ((frozenset({0, 1}), 8.0),))
    text = to_lp_text(build_instance(pkg, costs, k_max=2, budget=5.0))
    assert "budget:" in text and "Y_0_1" in text
    assert "act_Y_0_1_0" in text and "act_Y_0_1_all" in text
