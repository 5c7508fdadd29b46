"""Partial knowledge of a causal graph.

Every unordered vertex pair is in exactly one class:

* ``KNOWN``         edge present, orientation certain
* ``ADJACENT``      edge present, orientation open
* ``SEMI_DIRECTED`` either present in one candidate direction, or no edge at all
* ``UNKNOWN``       nothing established
* ``ABSENT``        no edge (resolved)

The state is fully resolved when only KNOWN and ABSENT remain; an essential
graph (CPDAG) is the special case using only KNOWN, ADJACENT and ABSENT.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .dag import Dag, Edge, Pair, _find_cycle, pair_of
from .errors import ConflictError, InconsistentPkgError, InvalidTestError, ValidationError


class EdgeClass(str, Enum):
    KNOWN = "known"
    ADJACENT = "adjacent"
    SEMI_DIRECTED = "semidirected"
    UNKNOWN = "unknown"
    ABSENT = "absent"


# --- experiment tests and their outcomes ---

@dataclass(frozen=True)
class OrientationTest:
    """Does the directed edge source -> target exist? Enabled when exactly
    the source is intervened on."""

    source: int
    target: int

    @property
    def pair(self) -> Pair:
        return pair_of(self.source, self.target)

    @property
    def id(self) -> str:
        return f"O:{self.source}->{self.target}"


@dataclass(frozen=True)
class AdjacencyTest:
    """Is the pair {a, b} adjacent at all? Enabled when neither endpoint is
    intervened on."""

    a: int
    b: int

    def __post_init__(self):
        if self.a >= self.b:
            raise ValidationError(f"adjacency test pair must satisfy a < b, got ({self.a}, {self.b})")

    @property
    def pair(self) -> Pair:
        return (self.a, self.b)

    @property
    def id(self) -> str:
        return f"A:{self.a}-{self.b}"


Test = OrientationTest | AdjacencyTest


@dataclass(frozen=True)
class Outcome:
    test: Test
    present: bool


def test_from_id(token: str) -> Test:
    """Parse the canonical wire id ("O:1->2" / "A:0-1") back into a test."""
    try:
        kind, rest = token.split(":", 1)
        if kind == "O":
            s, t = rest.split("->")
            return OrientationTest(int(s), int(t))
        if kind == "A":
            a, b = rest.split("-")
            return AdjacencyTest(int(a), int(b))
    except (ValueError, ValidationError):
        pass
    raise ValidationError(f"malformed test id {token!r}")


# --- the knowledge state itself ---

@dataclass(frozen=True)
class PartialGraph:
    """Total classification of all C(n,2) vertex pairs; pairs not listed in
    any class are ABSENT. Immutable; updates return new instances."""

    n: int
    known: frozenset[Edge]
    adjacent: frozenset[Pair]
    semi: frozenset[Edge]
    unknown: frozenset[Pair]

    def __post_init__(self):
        by_pair: dict[Pair, str] = {}
        for name, pairs in (
            ("known", [pair_of(i, j) for i, j in self.known]),
            ("adjacent", list(self.adjacent)),
            ("semidirected", [pair_of(i, j) for i, j in self.semi]),
            ("unknown", list(self.unknown)),
        ):
            for p in pairs:
                i, j = p
                if not (0 <= i < j < self.n):
                    raise ValidationError(f"pair {p} invalid for n={self.n} in {name}")
                if p in by_pair:
                    raise ValidationError(f"pair {p} classified as both {by_pair[p]} and {name}")
                by_pair[p] = name
        cycle = _find_cycle(self.n, self.known)
        if cycle is not None:
            raise InconsistentPkgError(
                "known edges contain a directed cycle: " + " -> ".join(map(str, cycle))
            )

    @staticmethod
    def build(n: int, known=(), adjacent=(), semi=(), unknown=()) -> PartialGraph:
        return PartialGraph(
            n=n,
            known=frozenset((int(i), int(j)) for i, j in known),
            adjacent=frozenset(pair_of(int(i), int(j)) for i, j in adjacent),
            semi=frozenset((int(i), int(j)) for i, j in semi),
            unknown=frozenset(pair_of(int(i), int(j)) for i, j in unknown),
        )

    @staticmethod
    def fully_unknown(n: int) -> PartialGraph:
        import itertools

        return PartialGraph.build(n, unknown=itertools.combinations(range(n), 2))

    # --- lookups ---

    @cached_property
    def _directed_by_pair(self) -> dict[Pair, Edge]:
        d = {pair_of(i, j): (i, j) for i, j in self.known}
        d.update({pair_of(i, j): (i, j) for i, j in self.semi})
        return d

    @cached_property
    def _class_by_pair(self) -> dict[Pair, EdgeClass]:
        m: dict[Pair, EdgeClass] = {}
        for i, j in self.known:
            m[pair_of(i, j)] = EdgeClass.KNOWN
        for p in self.adjacent:
            m[p] = EdgeClass.ADJACENT
        for i, j in self.semi:
            m[pair_of(i, j)] = EdgeClass.SEMI_DIRECTED
        for p in self.unknown:
            m[p] = EdgeClass.UNKNOWN
        return m

    def class_of(self, i: int, j: int) -> EdgeClass:
        if i == j or not (0 <= i < self.n and 0 <= j < self.n):
            raise ValidationError(f"not a vertex pair: ({i}, {j})")
        return self._class_by_pair.get(pair_of(i, j), EdgeClass.ABSENT)

    def direction(self, i: int, j: int) -> Edge | None:
        """The stored orientation for a KNOWN or SEMI_DIRECTED pair, else None."""
        return self._directed_by_pair.get(pair_of(i, j))

    def ambiguity(self) -> int:
        """Number of pairs not yet resolved to KNOWN or ABSENT."""
        return len(self.adjacent) + len(self.semi) + len(self.unknown)

    @property
    def resolved(self) -> bool:
        return self.ambiguity() == 0

    def viable(self) -> frozenset[int]:
        """Vertices incident to at least one unresolved pair."""
        verts: set[int] = set()
        for i, j in self.adjacent | self.unknown:
            verts.add(i)
            verts.add(j)
        for i, j in self.semi:
            verts.add(i)
            verts.add(j)
        return frozenset(verts)

    def unresolved_pairs(self) -> frozenset[Pair]:
        return self.adjacent | self.unknown | frozenset(pair_of(i, j) for i, j in self.semi)


def ambiguity(pkg: PartialGraph) -> int:
    return pkg.ambiguity()


# --- transition rules driven by test outcomes ---

def _transition(pkg: PartialGraph, outcome: Outcome) -> tuple[EdgeClass, Edge | None]:
    """New (class, direction) for the outcome's pair, per the update rules."""
    test, present = outcome.test, outcome.present
    p = test.pair
    cls = pkg.class_of(*p)

    if cls is EdgeClass.UNKNOWN:
        if isinstance(test, OrientationTest):
            if present:
                return EdgeClass.KNOWN, (test.source, test.target)
            return EdgeClass.SEMI_DIRECTED, (test.target, test.source)  # reverse candidate
        return (EdgeClass.ADJACENT, None) if present else (EdgeClass.ABSENT, None)

    if cls is EdgeClass.SEMI_DIRECTED:
        cand = pkg.direction(*p)
        if isinstance(test, OrientationTest) and (test.source, test.target) != cand:
            raise InvalidTestError(
                f"orientation test {test.id} does not match candidate direction {cand}"
            )
        return (EdgeClass.KNOWN, cand) if present else (EdgeClass.ABSENT, None)

    if cls is EdgeClass.ADJACENT:
        if not isinstance(test, OrientationTest):
            raise InvalidTestError(f"adjacency test {test.id} undefined for an adjacent pair")
        if present:
            return EdgeClass.KNOWN, (test.source, test.target)
        # adjacency is already certified, so refuting one direction proves the other
        return EdgeClass.KNOWN, (test.target, test.source)

    raise InvalidTestError(f"test {test.id} undefined for pair {p} in class {cls.value}")


def apply_outcomes(pkg: PartialGraph, outcomes) -> PartialGraph:
    """Apply a batch of test outcomes, one transition per pair.

    Raises InvalidTestError when a test is undefined for its pair's class,
    and ConflictError when a batch carries two distinct outcomes for one pair.
    """
    by_pair: dict[Pair, Outcome] = {}
    for o in outcomes:
        p = o.test.pair
        if p in by_pair and by_pair[p] != o:
            raise ConflictError(f"batch contains conflicting outcomes for pair {p}")
        by_pair[p] = o

    known = set(pkg.known)
    adjacent = set(pkg.adjacent)
    semi = set(pkg.semi)
    unknown = set(pkg.unknown)
    for p, o in by_pair.items():
        new_cls, direction = _transition(pkg, o)
        old_cls = pkg.class_of(*p)
        if old_cls is EdgeClass.ADJACENT:
            adjacent.discard(p)
        elif old_cls is EdgeClass.SEMI_DIRECTED:
            semi.discard(pkg.direction(*p))
        elif old_cls is EdgeClass.UNKNOWN:
            unknown.discard(p)
        if new_cls is EdgeClass.KNOWN:
            known.add(direction)
        elif new_cls is EdgeClass.ADJACENT:
            adjacent.add(p)
        elif new_cls is EdgeClass.SEMI_DIRECTED:
            semi.add(direction)
        # ABSENT: pair simply leaves every set

    return PartialGraph(pkg.n, frozenset(known), frozenset(adjacent), frozenset(semi), frozenset(unknown))


def transitions_applied(before: PartialGraph, after: PartialGraph) -> list[tuple[Pair, EdgeClass, EdgeClass]]:
    """Pairs whose class changed, with old and new class."""
    changed = []
    pairs = (
        before.unresolved_pairs()
        | after.unresolved_pairs()
        | {pair_of(i, j) for i, j in before.known | after.known}
    )
    for p in sorted(pairs):
        a, b = before.class_of(*p), after.class_of(*p)
        if a is not b or (a is b and before.direction(*p) != after.direction(*p)):
            changed.append((p, a, b))
    return changed


# --- serialization (the wire/file format used by the CLI and service) ---

def to_doc(pkg: PartialGraph) -> dict:
    return {
        "n": pkg.n,
        "known": sorted([i, j] for i, j in pkg.known),
        "adjacent": sorted([i, j] for i, j in pkg.adjacent),
        "semidirected": sorted([i, j] for i, j in pkg.semi),
        "unknown": sorted([i, j] for i, j in pkg.unknown),
    }


def from_doc(doc: dict) -> PartialGraph:
    if not isinstance(doc, dict):
        raise ValidationError("partial-graph document must be an object")
    try:
        n = int(doc["n"])
    except (KeyError, TypeError, ValueError):
        raise ValidationError("partial-graph document needs an integer field 'n'") from None
    lists = {}
    for field in ("known", "adjacent", "semidirected", "unknown"):
        raw = doc.get(field, [])
        if not isinstance(raw, list):
            raise ValidationError(f"field {field!r} must be a list of pairs")
        pairs = []
        for item in raw:
            if not (isinstance(item, (list, tuple)) and len(item) == 2):
                raise ValidationError(f"field {field!r} contains a non-pair entry: {item!r}")
            pairs.append((int(item[0]), int(item[1])))
        lists[field] = pairs
    try:
        return PartialGraph.build(
            n,
            known=lists["known"],
            adjacent=lists["adjacent"],
            semi=lists["semidirected"],
            unknown=lists["unknown"],
        )
    except InconsistentPkgError as exc:
        raise ValidationError(str(exc)) from exc


def dumps(pkg: PartialGraph) -> str:
    return json.dumps(to_doc(pkg), indent=2) + "\n"


def loads(text: str) -> PartialGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from exc
    return from_doc(doc)
