"""Directed acyclic graphs over vertices 0..n-1: validation, skeletons, colliders."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import CycleError, DuplicateEdgeError, SelfLoopError

Edge = tuple[int, int]          # ordered (source, target)
Pair = tuple[int, int]          # unordered, canonical i < j


def pair_of(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Dag:
    """Immutable directed acyclic graph. Construct via :func:`validate_dag`."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise SelfLoopError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise IndexError(f"edge ({i}, {j}) out of range for n={self.n}")
        cycle = _find_cycle(self.n, self.edges)
        if cycle is not None:
            raise CycleError(cycle)

    @cached_property
    def parents(self) -> dict[int, frozenset[int]]:
        par: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for i, j in self.edges:
            par[j].add(i)
        return {v: frozenset(s) for v, s in par.items()}

    @cached_property
    def children(self) -> dict[int, frozenset[int]]:
        ch: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for i, j in self.edges:
            ch[i].add(j)
        return {v: frozenset(s) for v, s in ch.items()}

    @cached_property
    def skeleton(self) -> frozenset[Pair]:
        return frozenset(pair_of(i, j) for i, j in self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def adjacent(self, i: int, j: int) -> bool:
        return pair_of(i, j) in self.skeleton


def validate_dag(n: int, edges) -> Dag:
    """Build a Dag from an ordered edge list, rejecting malformed input.

    Raises IndexError for out-of-range vertices, SelfLoopError for i == i
    edges, DuplicateEdgeError for a repeated ordered pair, and CycleError
    (naming one cycle) when the edges admit no topological order.
    """
    seen: set[Edge] = set()
    for e in edges:
        i, j = e
        if (i, j) in seen:
            raise DuplicateEdgeError(f"edge ({i}, {j}) listed twice")
        seen.add((i, j))
    return Dag(n, frozenset(seen))


def _find_cycle(n: int, edges: frozenset[Edge]) -> list[int] | None:
    """Return one directed cycle as a vertex list, or None if acyclic."""
    children: dict[int, list[int]] = {v: [] for v in range(n)}
    for i, j in edges:
        children[i].append(j)
    color = [0] * n  # 0 unvisited, 1 on stack, 2 done
    stack: list[int] = []

    def visit(v: int) -> list[int] | None:
        color[v] = 1
        stack.append(v)
        for w in children[v]:
            if color[w] == 1:
                return stack[stack.index(w):] + [w]
            if color[w] == 0:
                found = visit(w)
                if found is not None:
                    return found
        stack.pop()
        color[v] = 2
        return None

    for v in range(n):
        if color[v] == 0:
            found = visit(v)
            if found is not None:
                return found
    return None


def skeleton(dag: Dag) -> frozenset[Pair]:
    """Unordered adjacency pairs of the DAG."""
    return dag.skeleton


def v_structures(dag: Dag) -> frozenset[tuple[int, int, int]]:
    """Colliders a -> c <- b with a, b non-adjacent, canonicalized as (a, c, b) with a < b."""
    out = set()
    skel = dag.skeleton
    for c in range(dag.n):
        for a, b in itertools.combinations(sorted(dag.parents[c]), 2):
            if pair_of(a, b) not in skel:
                out.add((a, c, b))
    return frozenset(out)


def topological_order(dag: Dag) -> list[int]:
    """One topological order of the vertices (Kahn's algorithm, index tie-break)."""
    indeg = [0] * dag.n
    for _, j in dag.edges:
        indeg[j] += 1
    ready = sorted(v for v in range(dag.n) if indeg[v] == 0)
    order: list[int] = []
    import heapq

    heapq.heapify(ready)
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in dag.children[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return order
