"""Answers orientation and adjacency tests for an intervention set.

``SimulatedOracle`` reads answers off a ground-truth DAG under hard
interventions (incoming edges of intervened vertices severed, perfect test
results). ``InteractiveOracle`` collects answers from an external agent one
at a time and keeps an append-only ledger so sessions replay exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dag import Dag
from .errors import DuplicateSubmissionError, TestContextError, UnknownTestError
from .knowledge import AdjacencyTest, OrientationTest, Outcome, Test


def _check_context(intervened: frozenset[int], test: Test) -> None:
    if isinstance(test, OrientationTest):
        if test.source not in intervened or test.target in intervened:
            raise TestContextError(
                f"{test.id} needs source intervened and target not; I={sorted(intervened)}"
            )
    else:
        if test.a in intervened or test.b in intervened:
            raise TestContextError(
                f"{test.id} needs both endpoints unintervened; I={sorted(intervened)}"
            )


def answer_simulated(truth: Dag, intervened, tests) -> tuple[Outcome, ...]:
    """Perfect answers for every test under intervention on ``intervened``.

    An orientation test reports whether its directed edge exists in the truth
    (the reverse direction is severed by the intervention, so it cannot show
    up); an adjacency test reports skeleton membership.
    """
    intervened = frozenset(intervened)
    out = []
    for t in tests:
        _check_context(intervened, t)
        if isinstance(t, OrientationTest):
            present = (t.source, t.target) in truth.edges
        else:
            present = t.pair in truth.skeleton
        out.append(Outcome(t, present))
    return tuple(out)


class SimulatedOracle:
    """Stateless oracle over a fixed ground-truth DAG."""

    def __init__(self, truth: Dag):
        self.truth = truth

    def answer(self, intervened, tests) -> tuple[Outcome, ...]:
        return answer_simulated(self.truth, intervened, tests)


@dataclass(frozen=True)
class PendingAnswer:
    """Round answer that may still be waiting on some tests."""

    outcomes: tuple[Outcome, ...]
    pending: tuple[Test, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.pending


@dataclass
class InteractiveOracle:
    """One experimenter-backed round at a time; answers are immutable."""

    issued: tuple[Test, ...] = ()
    _answers: dict[Test, bool] = field(default_factory=dict)
    ledger: list[Outcome] = field(default_factory=list)

    def issue(self, tests) -> None:
        self.issued = tuple(tests)
        self._answers = {}

    def submit_outcome(self, test: Test, present: bool) -> None:
        if test not in self.issued:
            raise UnknownTestError(f"test {test.id} was never issued")
        if test in self._answers:
            raise DuplicateSubmissionError(f"test {test.id} already answered")
        self._answers[test] = present
        self.ledger.append(Outcome(test, present))

    def answer_interactive(self) -> PendingAnswer:
        outcomes = tuple(Outcome(t, self._answers[t]) for t in self.issued if t in self._answers)
        pending = tuple(t for t in self.issued if t not in self._answers)
        return PendingAnswer(outcomes, pending)
