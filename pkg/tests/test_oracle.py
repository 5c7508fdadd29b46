import random

import pytest

from causalplan import (
    AdjacencyTest,
    EdgeClass,
    InteractiveOracle,
    OrientationTest,
    answer_simulated,
    apply_outcomes,
    validate_dag,
)
from causalplan.errors import DuplicateSubmissionError, TestContextError, UnknownTestError
from causalplan.planner import enabled_tests

from conftest import random_consistent_pkg, random_dag


def test_orientation_present():
    truth = validate_dag(2, [(0, 1)])
    (out,) = answer_simulated(truth, {0}, [OrientationTest(0, 1)])
    assert out.present


def test_orientation_reverse_absent():
    truth = validate_dag(2, [(0, 1)])
    (out,) = answer_simulated(truth, {1}, [OrientationTest(1, 0)])
    assert not out.present


def test_adjacency_is_edge_membership_not_reachability():
    truth = validate_dag(3, [(0, 1), (1, 2)])
    (out,) = answer_simulated(truth, set(), [AdjacencyTest(0, 2)])
    assert not out.present


def test_context_guards():
    truth = validate_dag(2, [(0, 1)])
    with pytest.raises(TestContextError):
        answer_simulated(truth, set(), [OrientationTest(0, 1)])  # source not intervened
    with pytest.raises(TestContextError):
        answer_simulated(truth, {0, 1}, [OrientationTest(0, 1)])  # target intervened
    with pytest.raises(TestContextError):
        answer_simulated(truth, {0}, [AdjacencyTest(0, 1)])  # endpoint intervened


def test_determinism():
    rng = random.Random(2)
    truth = random_dag(rng, 6, 0.5)
    tests = [OrientationTest(0, 1), AdjacencyTest(2, 3)]
    first = answer_simulated(truth, {0}, tests)
    assert all(answer_simulated(truth, {0}, tests) == first for _ in range(5))


def test_consistency_feeds_sound_updates():
    # outcomes from the simulated oracle never contradict the truth graph
    rng = random.Random(31)
    for _ in range(100):
        truth = random_dag(rng, rng.randint(2, 8), rng.choice([0.2, 0.5, 0.8]))
        pkg = random_consistent_pkg(rng, truth)
        viable = sorted(pkg.viable())
        x = frozenset(rng.sample(viable, min(len(viable), rng.randint(0, 3))))
        tests = enabled_tests(pkg, x)
        updated = apply_outcomes(pkg, answer_simulated(truth, x, tests))
        assert updated.known <= truth.edges
        for i in range(truth.n):
            for j in range(i + 1, truth.n):
                if updated.class_of(i, j) is EdgeClass.ABSENT:
                    assert (i, j) not in truth.skeleton


def test_interactive_flow():
    oracle = InteractiveOracle()
    oracle.issue([OrientationTest(0, 1), AdjacencyTest(1, 2)])
    assert not oracle.answer_interactive().complete

    oracle.submit_outcome(OrientationTest(0, 1), True)
    partial = oracle.answer_interactive()
    assert not partial.complete and len(partial.outcomes) == 1

    oracle.submit_outcome(AdjacencyTest(1, 2), False)
    answer = oracle.answer_interactive()
    assert answer.complete and len(answer.outcomes) == 2
    assert [o.present for o in oracle.ledger] == [True, False]


def test_interactive_rejects_unknown_and_duplicate():
    oracle = InteractiveOracle()
    oracle.issue([OrientationTest(0, 1)])
    with pytest.raises(UnknownTestError):
        oracle.submit_outcome(OrientationTest(1, 0), True)
    oracle.submit_outcome(OrientationTest(0, 1), True)
    with pytest.raises(DuplicateSubmissionError):
        oracle.submit_outcome(OrientationTest(0, 1), False)
