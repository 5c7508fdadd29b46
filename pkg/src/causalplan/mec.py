"""Essential graphs and Markov-equivalence-class enumeration.

``cpdag_of`` builds the essential graph of a DAG (collider orientation plus
rule closure). ``enumerate_mec`` exhaustively lists the equivalence class of
a KNOWN/ADJACENT/ABSENT state; it exists as a small-instance test oracle, not
as a planner component.
"""
from __future__ import annotations

import itertools

from .dag import Dag, Edge, Pair, pair_of, v_structures
from .errors import TooLargeError, ValidationError
from .knowledge import EdgeClass, PartialGraph
from .meek import meek_closure


def cpdag_of(dag: Dag) -> PartialGraph:
    """Essential graph of ``dag``: KNOWN where every MEC member agrees,
    ADJACENT on the rest of the skeleton, ABSENT elsewhere."""
    known: set[Edge] = set()
    for a, c, b in v_structures(dag):
        known.add((a, c))
        known.add((b, c))
    adjacent = {p for p in dag.skeleton if p not in {pair_of(i, j) for i, j in known}}
    start = PartialGraph(dag.n, frozenset(known), frozenset(adjacent), frozenset(), frozenset())
    return meek_closure(start)


def _known_colliders(pkg: PartialGraph) -> frozenset[tuple[int, int, int]]:
    """Colliders formed entirely by KNOWN edges whose tails are non-adjacent
    in the state's skeleton."""
    parents: dict[int, list[int]] = {v: [] for v in range(pkg.n)}
    for i, j in pkg.known:
        parents[j].append(i)
    skel = {pair_of(i, j) for i, j in pkg.known} | pkg.adjacent
    out = set()
    for c in range(pkg.n):
        for a, b in itertools.combinations(sorted(parents[c]), 2):
            if pair_of(a, b) not in skel:
                out.add((a, c, b))
    return frozenset(out)


def enumerate_mec(pkg: PartialGraph, max_pairs: int = 28) -> list[Dag]:
    """All DAGs completing the state's skeleton that keep its KNOWN
    orientations and have exactly its collider set.

    Accepts only states built from KNOWN/ADJACENT/ABSENT classes and at most
    ``max_pairs`` ADJACENT pairs (the search branches over 2^pairs
    orientations, pruned on cycles and forbidden colliders).
    """
    if pkg.semi or pkg.unknown:
        raise ValidationError("enumeration needs a KNOWN/ADJACENT/ABSENT state")
    if len(pkg.adjacent) > max_pairs:
        raise TooLargeError(
            f"{len(pkg.adjacent)} undirected pairs exceeds the enumeration limit {max_pairs}"
        )

    skel = {pair_of(i, j) for i, j in pkg.known} | pkg.adjacent
    pairs = sorted(pkg.adjacent)

    children: dict[int, set[int]] = {v: set() for v in range(pkg.n)}
    parents: dict[int, set[int]] = {v: set() for v in range(pkg.n)}
    for i, j in pkg.known:
        children[i].add(j)
        parents[j].add(i)

    def reaches(src: int, dst: int) -> bool:
        if src == dst:
            return True
        seen = {src}
        stack = [src]
        while stack:
            v = stack.pop()
            for w in children[v]:
                if w == dst:
                    return True
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def admissible(src: int, dst: int) -> bool:
        if reaches(dst, src):  # would close a directed cycle
            return False
        # target colliders are all KNOWN-KNOWN, so a fresh orientation must
        # not complete any collider with non-adjacent tails
        for other in parents[dst]:
            if other != src and pair_of(other, src) not in skel:
                return False
        return True

    results: list[Dag] = []

    def recurse(idx: int) -> None:
        if idx == len(pairs):
            edges = frozenset((i, j) for i in children for j in children[i])
            results.append(Dag(pkg.n, edges))
            return
        i, j = pairs[idx]
        for src, dst in ((i, j), (j, i)):
            if admissible(src, dst):
                children[src].add(dst)
                parents[dst].add(src)
                recurse(idx + 1)
                children[src].remove(dst)
                parents[dst].remove(src)

    recurse(0)
    return results


def mec_consensus(members: list[Dag]) -> tuple[frozenset[Edge], frozenset[Pair]]:
    """(directed edges shared by every member, full skeleton) of a class."""
    if not members:
        raise ValidationError("empty equivalence class")
    common = set(members[0].edges)
    for d in members[1:]:
        common &= d.edges
    return frozenset(common), members[0].skeleton
