"""Synthetic DAG generation, edge-list and BIF-structure ingestion, and
structural statistics for benchmark networks."""
from __future__ import annotations

import math
import random
import re
import statistics
from dataclasses import dataclass
from importlib import resources

from .dag import Dag, v_structures, validate_dag
from .errors import ParseError


@dataclass(frozen=True)
class ErdosRenyiSpec:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ParseError(f"need at least one node, got n={self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ParseError(f"edge probability must be in [0, 1], got {self.p}")


def erdos_renyi_dag(spec: ErdosRenyiSpec) -> Dag:
    """G(n, p) skeleton oriented by the identity topological order.

    Stream contract: one uniform draw per pair (i, j), i < j, in lexicographic
    order from ``random.Random(seed)``; the edge i -> j is kept when the draw
    is below p. Acyclic by construction.
    """
    rng = random.Random(spec.seed)
    edges = [
        (i, j)
        for i in range(spec.n)
        for j in range(i + 1, spec.n)
        if rng.random() < spec.p
    ]
    return Dag(spec.n, frozenset(edges))


# --- edge-list files ---

def load_edge_list(text: str, n: int | None = None) -> Dag:
    """Parse "i j" lines ('#' comments and blank lines ignored) into a Dag.

    Vertex count defaults to max index + 1; pass ``n`` to keep trailing
    isolated vertices.
    """
    edges = []
    max_seen = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected 'i j', got {raw!r}", line=lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {raw!r}", line=lineno) from None
        if i < 0 or j < 0:
            raise ParseError(f"negative vertex index in {raw!r}", line=lineno)
        edges.append((i, j))
        max_seen = max(max_seen, i, j)
    count = max_seen + 1 if n is None else n
    return validate_dag(max(count, 1), edges)


def save_edge_list(dag: Dag) -> str:
    lines = [f"{i} {j}" for i, j in sorted(dag.edges)]
    return "\n".join(lines) + ("\n" if lines else "")


# --- minimal BIF structure reader (names and parent sets only) ---

_BIF_VARIABLE = re.compile(r"\bvariable\s+([A-Za-z0-9_.\-]+)\s*\{")
_BIF_PROBABILITY = re.compile(r"\bprobability\s*\(\s*([^)|]+?)(?:\|([^)]*))?\)")


def load_bif_structure(text: str) -> tuple[Dag, list[str]]:
    """Edges from a BIF file's probability headers; tables are ignored.

    Returns the Dag (vertices indexed by declaration order) and the variable
    names in that order.
    """
    names = _BIF_VARIABLE.findall(text)
    if not names:
        raise ParseError("no variable declarations found")
    index = {name: k for k, name in enumerate(names)}
    edges = []
    for match in _BIF_PROBABILITY.finditer(text):
        child = match.group(1).strip()
        if child not in index:
            raise ParseError(f"probability clause for undeclared variable {child!r}")
        if match.group(2):
            for parent in match.group(2).split(","):
                parent = parent.strip()
                if parent not in index:
                    raise ParseError(f"undeclared parent {parent!r} of {child!r}")
                edges.append((index[parent], index[child]))
    return validate_dag(len(names), edges), names


# --- bundled benchmark fixtures ---

FIXTURE_NAMES = ("asia", "sachs")


def load_fixture(name: str) -> Dag:
    if name not in FIXTURE_NAMES:
        raise ParseError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    text = resources.files("causalplan.fixtures").joinpath(f"{name}.edges").read_text()
    return load_edge_list(text)


# --- structural statistics ---

@dataclass(frozen=True)
class GraphStats:
    nodes: int
    edges: int
    min_degree: int
    avg_degree: float
    max_degree: int
    stdev_degree: float
    v_structures: int


def structural_stats(dag: Dag) -> GraphStats:
    """Degree statistics on the undirected skeleton (sample stdev) plus the
    collider count."""
    degree = [0] * dag.n
    for i, j in dag.skeleton:
        degree[i] += 1
        degree[j] += 1
    return GraphStats(
        nodes=dag.n,
        edges=len(dag.edges),
        min_degree=min(degree) if degree else 0,
        avg_degree=2 * len(dag.edges) / dag.n if dag.n else 0.0,
        max_degree=max(degree) if degree else 0,
        stdev_degree=statistics.stdev(degree) if dag.n > 1 else 0.0,
        v_structures=len(v_structures(dag)),
    )
