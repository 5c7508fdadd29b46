"""Orientation propagation: Meek's rules R1-R4 run to fixpoint.

Rule premises are matched conservatively on the five-class knowledge state:
a directed premise matches only a KNOWN edge, an undirected premise only an
ADJACENT pair, and a non-adjacency premise only an ABSENT pair. UNKNOWN and
SEMI_DIRECTED pairs block rules in every role, so propagation stays sound
even when the state is not an essential graph. The only change a closure can
make is ADJACENT -> KNOWN.
"""
from __future__ import annotations

from collections import deque

from .dag import Edge, Pair, pair_of
from .errors import InconsistentPkgError
from .knowledge import EdgeClass, PartialGraph


class _State:
    """Mutable working copy of the orientation-relevant structure."""

    def __init__(self, pkg: PartialGraph):
        self.n = pkg.n
        self.parents: dict[int, set[int]] = {v: set() for v in range(pkg.n)}
        self.children: dict[int, set[int]] = {v: set() for v in range(pkg.n)}
        for i, j in pkg.known:
            self.children[i].add(j)
            self.parents[j].add(i)
        self.adj_nb: dict[int, set[int]] = {v: set() for v in range(pkg.n)}
        self.adjacent: set[Pair] = set(pkg.adjacent)
        for i, j in pkg.adjacent:
            self.adj_nb[i].add(j)
            self.adj_nb[j].add(i)
        # pairs carrying any information at all; ABSENT == not in here and
        # not UNKNOWN/SEMI. Class moves during closure never change this.
        self.nonabsent: set[Pair] = {pair_of(i, j) for i, j in pkg.known}
        self.nonabsent |= pkg.adjacent | pkg.unknown
        self.nonabsent |= {pair_of(i, j) for i, j in pkg.semi}
        # linkage (KNOWN or ADJACENT), static under closure
        self.linked: dict[int, set[int]] = {v: set(self.adj_nb[v]) for v in range(pkg.n)}
        for i, j in pkg.known:
            self.linked[i].add(j)
            self.linked[j].add(i)

    def absent(self, i: int, j: int) -> bool:
        return pair_of(i, j) not in self.nonabsent

    def has_known(self, i: int, j: int) -> bool:
        return j in self.children[i]

    def reaches(self, src: int, dst: int) -> bool:
        """Directed reachability src ~> dst over KNOWN edges."""
        if src == dst:
            return True
        seen = {src}
        stack = [src]
        while stack:
            v = stack.pop()
            for w in self.children[v]:
                if w == dst:
                    return True
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def orient(self, i: int, j: int) -> None:
        if self.reaches(j, i):
            raise InconsistentPkgError(
                f"orienting {i} -> {j} would close a directed cycle among known edges"
            )
        p = pair_of(i, j)
        self.adjacent.discard(p)
        self.adj_nb[i].discard(j)
        self.adj_nb[j].discard(i)
        self.children[i].add(j)
        self.parents[j].add(i)


def _rule_fires(s: _State, a: int, b: int) -> bool:
    """Would any of R1-R4 orient the adjacent pair a - b as a -> b?"""
    # R1: some i -> a with {i, b} absent
    for i in s.parents[a]:
        if s.absent(i, b):
            return True
    # R2: a -> k -> b for some k
    for k in s.children[a]:
        if s.has_known(k, b):
            return True
    # R3: k, l adjacent to a (undirected), both k -> b and l -> b, {k, l} absent
    candidates = [k for k in s.adj_nb[a] if s.has_known(k, b)]
    for x in range(len(candidates)):
        for y in range(x + 1, len(candidates)):
            if s.absent(candidates[x], candidates[y]):
                return True
    # R4: d -> c -> b with a - d and a - c undirected and {b, d} absent
    for c in s.parents[b]:
        if c not in s.adj_nb[a]:
            continue
        for d in s.parents[c]:
            if d in s.adj_nb[a] and s.absent(b, d):
                return True
    return False


def meek_closure(pkg: PartialGraph) -> PartialGraph:
    """Apply R1-R4 until no rule fires; only ADJACENT pairs gain orientations.

    Raises InconsistentPkgError if a forced orientation would create a cycle
    among KNOWN edges, which signals corrupted input knowledge.
    """
    s = _State(pkg)
    queue: deque[Pair] = deque(sorted(s.adjacent))
    queued: set[Pair] = set(queue)

    while queue:
        p = queue.popleft()
        queued.discard(p)
        if p not in s.adjacent:
            continue
        i, j = p
        if _rule_fires(s, i, j):
            src, dst = i, j
        elif _rule_fires(s, j, i):
            src, dst = j, i
        else:
            continue
        s.orient(src, dst)
        # rules newly enabled by this orientation only involve pairs within
        # the closed neighborhood of its endpoints
        region = {src, dst} | s.linked[src] | s.linked[dst]
        for v in region:
            for w in s.adj_nb[v]:
                q = pair_of(v, w)
                if q in s.adjacent and q not in queued:
                    queue.append(q)
                    queued.add(q)

    new_known = frozenset(
        (i, j) for i in range(pkg.n) for j in s.children[i]
    )
    return PartialGraph(pkg.n, new_known, frozenset(s.adjacent), pkg.semi, pkg.unknown)
