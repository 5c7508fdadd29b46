"""Exact 0-1 program selecting the most informative intervention set.

One round's decision problem: choose which viable vertices to intervene on
(at most ``k_max``, within an optional budget) so that the weighted number of
uncertain pairs subjected to a resolving test is maximal. Orientation tests
require exactly the source intervened; adjacency tests require both endpoints
unintervened; each uncertain pair counts when some enabled test covers it:

* UNKNOWN {i,j}        counts unless both endpoints are intervened
* SEMI_DIRECTED i->j   counts iff j is not intervened
* ADJACENT {i,j}       counts iff exactly one endpoint is intervened

``solve`` is a depth-first branch and bound over vertex membership; it is
exact and enumerates ties so one optimum can be drawn uniformly at random.
``solve_bruteforce`` is the independent reference for small instances.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from enum import Enum

from .dag import Edge, Pair, pair_of
from .errors import ConfigError, InfeasibleError, TooLargeError
from .knowledge import PartialGraph

FEAS_TOL = 1e-9


# --- cost model ---

@dataclass(frozen=True)
class CostModel:
    """Per-vertex intervention/observation costs plus joint-intervention
    surcharges C_S incurred exactly when all of S is intervened together."""

    intervention: tuple[float, ...]
    observation: tuple[float, ...]
    interactions: tuple[tuple[frozenset[int], float], ...] = ()

    def __post_init__(self):
        if len(self.intervention) != len(self.observation):
            raise ConfigError("intervention and observation cost vectors differ in length")
        if any(c < 0 for c in self.intervention) or any(c < 0 for c in self.observation):
            raise ConfigError("per-vertex costs must be non-negative")
        seen = set()
        for s, _ in self.interactions:
            if len(s) < 2:
                raise ConfigError("interaction subsets need at least two vertices")
            if s in seen:
                raise ConfigError(f"duplicate interaction subset {sorted(s)}")
            seen.add(s)

    @staticmethod
    def uniform(n: int, intervention: float = 1.0, observation: float = 0.0,
                interactions=()) -> CostModel:
        return CostModel(
            (float(intervention),) * n,
            (float(observation),) * n,
            tuple((frozenset(s), float(c)) for s, c in interactions),
        )


def cost_of(x, costs: CostModel, viable) -> float:
    """Cost of intervening on ``x`` while observing the rest of the viable set."""
    x = frozenset(x)
    total = sum(costs.intervention[v] for v in x)
    total += sum(costs.observation[v] for v in viable if v not in x)
    total += sum(c for s, c in costs.interactions if s <= x)
    return total


# --- objective ---

class ObjectiveKind(str, Enum):
    PLAIN = "plain"
    WEIGHTED = "weighted"
    TARGETED = "targeted"
    COST_PENALTY = "cost-penalty"


@dataclass(frozen=True)
class ObjectiveSpec:
    kind: ObjectiveKind = ObjectiveKind.PLAIN
    unknown_weights: tuple[tuple[Pair, float], ...] = ()
    semi_weights: tuple[tuple[Pair, float], ...] = ()
    adjacent_weights: tuple[tuple[Pair, float], ...] = ()
    relevant: frozenset[Pair] = frozenset()
    penalty: float = 0.0

    def __post_init__(self):
        if self.penalty < 0:
            raise ConfigError("cost penalty must be non-negative")
        for table in (self.unknown_weights, self.semi_weights, self.adjacent_weights):
            if any(w < 0 for _, w in table):
                raise ConfigError("edge weights must be non-negative")

    @staticmethod
    def plain() -> ObjectiveSpec:
        return ObjectiveSpec()

    @staticmethod
    def weighted(unknown=(), semi=(), adjacent=()) -> ObjectiveSpec:
        tab = lambda m: tuple(sorted((pair_of(*p), float(w)) for p, w in dict(m).items()))
        return ObjectiveSpec(ObjectiveKind.WEIGHTED, tab(unknown), tab(semi), tab(adjacent))

    @staticmethod
    def targeted(pairs) -> ObjectiveSpec:
        return ObjectiveSpec(ObjectiveKind.TARGETED, relevant=frozenset(pair_of(*p) for p in pairs))

    @staticmethod
    def cost_penalty(penalty: float) -> ObjectiveSpec:
        return ObjectiveSpec(ObjectiveKind.COST_PENALTY, penalty=float(penalty))

    def weight_of(self, table: str, pair: Pair) -> float:
        if self.kind is ObjectiveKind.WEIGHTED:
            lookup = {
                "unknown": self.unknown_weights,
                "semi": self.semi_weights,
                "adjacent": self.adjacent_weights,
            }[table]
            return dict(lookup).get(pair, 1.0)
        if self.kind is ObjectiveKind.TARGETED:
            return 1.0 if pair in self.relevant else 0.0
        return 1.0


# --- instance ---

@dataclass(frozen=True)
class IpInstance:
    n: int
    viable: tuple[int, ...]
    unknown_pairs: tuple[Pair, ...]
    semi_edges: tuple[Edge, ...]
    adjacent_pairs: tuple[Pair, ...]
    w_unknown: tuple[float, ...]
    w_semi: tuple[float, ...]
    w_adjacent: tuple[float, ...]
    costs: CostModel
    budget: float | None
    k_max: int
    objective: ObjectiveSpec
    k_batch: int = 1
    batch_budgets: tuple[float, ...] | None = None
    total_budget: float | None = None
    cap_per_edge: bool = False
    tie_enumeration_limit: int = 18

    @property
    def orientation_vars(self) -> list[Edge]:
        """Ordered pairs carrying an O variable (uncertain-edge directions)."""
        out: list[Edge] = []
        for i, j in self.unknown_pairs:
            out.extend([(i, j), (j, i)])
        out.extend(self.semi_edges)  # candidate direction only
        for i, j in self.adjacent_pairs:
            out.extend([(i, j), (j, i)])
        return out

    @property
    def adjacency_vars(self) -> list[Pair]:
        """Unordered pairs carrying an A variable."""
        return list(self.unknown_pairs) + [pair_of(i, j) for i, j in self.semi_edges]


def build_instance(pkg: PartialGraph, costs: CostModel | None = None, *,
                   k_max: int = 1, budget: float | None = None,
                   objective: ObjectiveSpec | None = None, k_batch: int = 1,
                   batch_budgets=None, total_budget: float | None = None,
                   cap_per_edge: bool = False,
                   tie_enumeration_limit: int = 18) -> IpInstance:
    """Compile the knowledge state into one round's decision problem."""
    if k_max < 1:
        raise ConfigError(f"k_max must be >= 1, got {k_max}")
    if k_batch < 1:
        raise ConfigError(f"k_batch must be >= 1, got {k_batch}")
    objective = objective or ObjectiveSpec.plain()
    costs = costs or CostModel.uniform(pkg.n)
    if len(costs.intervention) != pkg.n:
        raise ConfigError(f"cost vectors must have length n={pkg.n}")
    if batch_budgets is not None:
        batch_budgets = tuple(float(b) for b in batch_budgets)
        if len(batch_budgets) != k_batch:
            raise ConfigError("need one per-batch budget per batch")

    unknown = tuple(sorted(pkg.unknown))
    semi = tuple(sorted(pkg.semi))
    adjacent = tuple(sorted(pkg.adjacent))
    return IpInstance(
        n=pkg.n,
        viable=tuple(sorted(pkg.viable())),
        unknown_pairs=unknown,
        semi_edges=semi,
        adjacent_pairs=adjacent,
        w_unknown=tuple(objective.weight_of("unknown", p) for p in unknown),
        w_semi=tuple(objective.weight_of("semi", pair_of(i, j)) for i, j in semi),
        w_adjacent=tuple(objective.weight_of("adjacent", p) for p in adjacent),
        costs=costs,
        budget=None if budget is None else float(budget),
        k_max=k_max,
        objective=objective,
        k_batch=k_batch,
        batch_budgets=batch_budgets,
        total_budget=None if total_budget is None else float(total_budget),
        cap_per_edge=cap_per_edge,
        tie_enumeration_limit=tie_enumeration_limit,
    )


# --- closed-form gain ---

def _edge_counts(kind: str, i: int, j: int, x: frozenset[int]) -> bool:
    if kind == "U":
        return not (i in x and j in x)
    if kind == "S":
        return j not in x
    return (i in x) != (j in x)  # adjacent


def _compiled_edges(instance: IpInstance) -> list[tuple[str, int, int, float]]:
    edges = [("U", i, j, w) for (i, j), w in zip(instance.unknown_pairs, instance.w_unknown)]
    edges += [("S", i, j, w) for (i, j), w in zip(instance.semi_edges, instance.w_semi)]
    edges += [("A", i, j, w) for (i, j), w in zip(instance.adjacent_pairs, instance.w_adjacent)]
    return edges


def instance_gain(instance: IpInstance, batches) -> float:
    """Objective value of an explicit choice (one vertex set per batch)."""
    if isinstance(batches, (set, frozenset)):
        batches = (frozenset(batches),)
    batches = tuple(frozenset(b) for b in batches)
    edges = _compiled_edges(instance)
    if instance.cap_per_edge:
        total = sum(w for kind, i, j, w in edges
                    if any(_edge_counts(kind, i, j, x) for x in batches))
    else:
        total = sum(w for x in batches for kind, i, j, w in edges
                    if _edge_counts(kind, i, j, x))
    if instance.objective.kind is ObjectiveKind.COST_PENALTY:
        total -= instance.objective.penalty * sum(
            cost_of(x, instance.costs, instance.viable) for x in batches
        )
    return total


def gain(pkg: PartialGraph, x, objective: ObjectiveSpec | None = None,
         costs: CostModel | None = None) -> float:
    """Closed-form objective value of intervening on ``x`` in this state."""
    inst = build_instance(pkg, costs, k_max=max(1, len(frozenset(x))), objective=objective)
    return instance_gain(inst, frozenset(x))


# --- indicator assignments (reported alongside solutions) ---

@dataclass(frozen=True)
class Indicators:
    """Maximal test/update assignment induced by one intervention set."""

    orientation: frozenset[Edge]
    adjacency: frozenset[Pair]
    updated_unknown: frozenset[Pair]
    updated_semi: frozenset[Edge]
    updated_adjacent: frozenset[Pair]


def indicator_assignment(instance: IpInstance, x) -> Indicators:
    x = frozenset(x)
    o_on = frozenset((i, j) for i, j in instance.orientation_vars if i in x and j not in x)
    a_on = frozenset(p for p in instance.adjacency_vars if p[0] not in x and p[1] not in x)
    return Indicators(
        orientation=o_on,
        adjacency=a_on,
        updated_unknown=frozenset(p for p in instance.unknown_pairs
                                  if _edge_counts("U", p[0], p[1], x)),
        updated_semi=frozenset(e for e in instance.semi_edges
                               if _edge_counts("S", e[0], e[1], x)),
        updated_adjacent=frozenset(p for p in instance.adjacent_pairs
                                   if _edge_counts("A", p[0], p[1], x)),
    )


# --- solutions ---

@dataclass(frozen=True)
class IpSolution:
    batches: tuple[frozenset[int], ...]
    objective_value: float
    status: str
    indicators: tuple[Indicators, ...]

    @property
    def x(self) -> frozenset[int]:
        if len(self.batches) != 1:
            raise ConfigError("solution has multiple batches; use .batches")
        return self.batches[0]


@dataclass(frozen=True)
class BruteForceResult:
    objective_value: float
    optima: tuple[frozenset[int], ...]


def _tie_tolerance(instance: IpInstance) -> float:
    weights = instance.w_unknown + instance.w_semi + instance.w_adjacent
    if instance.objective.kind is not ObjectiveKind.COST_PENALTY and all(
        float(w).is_integer() for w in weights
    ):
        return 0.0
    return 1e-9


def solve_bruteforce(instance: IpInstance, size_limit: int = 20) -> BruteForceResult:
    """Exhaustive reference solver: every vertex subset up to k_max, every
    feasibility check explicit. Single-batch instances only."""
    if instance.k_batch != 1:
        raise TooLargeError("brute force is defined for single-batch instances")
    if len(instance.viable) > size_limit:
        raise TooLargeError(
            f"{len(instance.viable)} viable vertices exceeds brute-force limit {size_limit}"
        )
    budget = instance.batch_budgets[0] if instance.batch_budgets else instance.budget
    tol = _tie_tolerance(instance)
    best = -math.inf
    optima: list[frozenset[int]] = []
    for size in range(min(instance.k_max, len(instance.viable)) + 1):
        for combo in itertools.combinations(instance.viable, size):
            x = frozenset(combo)
            c = cost_of(x, instance.costs, instance.viable)
            if budget is not None and c > budget + FEAS_TOL:
                continue
            if instance.total_budget is not None:
                c_int = sum(instance.costs.intervention[v] for v in x) + sum(
                    cs for s, cs in instance.costs.interactions if s <= x
                )
                if c_int > instance.total_budget + FEAS_TOL:
                    continue
            value = instance_gain(instance, x)
            if value > best + tol:
                best = value
                optima = [x]
            elif abs(value - best) <= tol:
                optima.append(x)
    if not optima:
        raise InfeasibleError("no intervention set satisfies the budget")
    return BruteForceResult(best, tuple(optima))


# --- exact branch-and-bound solver ---

class _Search:
    """DFS over per-vertex choices (no batch, or batch index), with an
    admissible bound: total still-possible edge weight minus the cheapest
    completion's penalty. Enumerates the full optimum tie set when the viable
    set is small, otherwise keeps a uniform reservoir of encountered optima.
    """

    def __init__(self, instance: IpInstance, rng: random.Random):
        self.inst = instance
        self.rng = rng
        self.kb = instance.k_batch
        self.tol = _tie_tolerance(instance)
        self.penalty = (instance.objective.penalty
                        if instance.objective.kind is ObjectiveKind.COST_PENALTY else 0.0)

        self.edges = _compiled_edges(instance)
        weight_at: dict[int, float] = {v: 0.0 for v in instance.viable}
        for kind, i, j, w in self.edges:
            weight_at[i] += w
            weight_at[j] += w
        self.verts = sorted(instance.viable, key=lambda v: (-weight_at[v], v))
        self.pos = {v: idx for idx, v in enumerate(self.verts)}
        self.nv = len(self.verts)
        self.incident: list[list[int]] = [[] for _ in range(self.nv)]
        for e, (kind, i, j, w) in enumerate(self.edges):
            self.incident[self.pos[i]].append(e)
            if j != i and j in self.pos:
                self.incident[self.pos[j]].append(e)

        # choice per vertex position: -1 undecided, 0 not intervened, b>=1 batch b
        self.choice = [-1] * self.nv
        # per (edge, batch): 0 undetermined, 1 counts, 2 lost
        self.estate = [0] * (len(self.edges) * self.kb)
        self.counted = [0] * len(self.edges)
        self.possible = [self.kb] * len(self.edges)
        self.bound_sum = sum(self._edge_bound(e) for e in range(len(self.edges)))
        self.leaf_sum = 0.0

        ci, co = instance.costs.intervention, instance.costs.observation
        self.ci, self.co = ci, co
        per_batch = instance.batch_budgets or (
            None if instance.budget is None else (instance.budget,) * self.kb
        )
        self.batch_budget = per_batch
        self.suffix_min = [0.0] * (self.nv + 1)
        for idx in range(self.nv - 1, -1, -1):
            v = self.verts[idx]
            self.suffix_min[idx] = self.suffix_min[idx + 1] + min(ci[v], co[v])
        self.decided_cost = [0.0] * (self.kb + 1)  # index by batch, 0 unused
        # track observation cost of decided vertices per batch: a vertex not
        # in batch b contributes CO to batch b's experiment
        self.decided_obs = [0.0] * (self.kb + 1)
        self.decided_ci_total = 0.0

        self.interactions = [
            (tuple(sorted(s)), c) for s, c in instance.costs.interactions
            if s <= set(instance.viable)
        ]
        self.int_in = [[0] * self.kb for _ in self.interactions]
        self.int_out = [[0] * self.kb for _ in self.interactions]
        self.int_active = [0.0] * (self.kb + 1)
        self.int_pot_neg = [sum(c for _, c in self.interactions if c < 0)] * (self.kb + 1)
        self.int_by_vert: list[list[int]] = [[] for _ in range(self.nv)]
        for si, (s, c) in enumerate(self.interactions):
            for v in s:
                self.int_by_vert[self.pos[v]].append(si)

        self.k_used = [0] * (self.kb + 1)
        self.best = -math.inf
        self.optima: list[tuple[frozenset[int], ...]] = []
        self.enumerating = len(instance.viable) <= instance.tie_enumeration_limit
        self.reservoir: tuple[frozenset[int], ...] | None = None
        self.optima_seen = 0

    # --- per-edge bookkeeping ---

    def _edge_bound(self, e: int) -> float:
        w = self.edges[e][3]
        if self.inst.cap_per_edge:
            return w * min(1, self.counted[e] + self.possible[e])
        return w * (self.counted[e] + self.possible[e])

    def _edge_leaf(self, e: int) -> float:
        w = self.edges[e][3]
        if self.inst.cap_per_edge:
            return w * min(1, self.counted[e])
        return w * self.counted[e]

    def _edge_state(self, e: int, b: int) -> int:
        """Recompute the counts/lost/undetermined state of edge e in batch b+1."""
        kind, i, j, _ = self.edges[e]
        ci_ = self.choice[self.pos[i]]
        cj_ = self.choice[self.pos[j]]
        batch = b + 1
        if kind == "S":
            if cj_ == -1:
                return 0
            return 2 if cj_ == batch else 1
        if kind == "U":
            if (ci_ != -1 and ci_ != batch) or (cj_ != -1 and cj_ != batch):
                return 1
            if ci_ == batch and cj_ == batch:
                return 2
            return 0
        # adjacent: needs both decided
        if ci_ == -1 or cj_ == -1:
            return 0
        return 1 if (ci_ == batch) != (cj_ == batch) else 2

    def _refresh_edges(self, pos: int, undo: list) -> None:
        for e in self.incident[pos]:
            for b in range(self.kb):
                idx = e * self.kb + b
                old = self.estate[idx]
                if old != 0:
                    continue
                new = self._edge_state(e, b)
                if new == 0:
                    continue
                before = self._edge_bound(e)
                before_leaf = self._edge_leaf(e)
                self.estate[idx] = new
                self.possible[e] -= 1
                if new == 1:
                    self.counted[e] += 1
                self.bound_sum += self._edge_bound(e) - before
                self.leaf_sum += self._edge_leaf(e) - before_leaf
                undo.append((e, b, new, before, before_leaf))

    def _undo_edges(self, undo: list) -> None:
        for e, b, new, before, before_leaf in reversed(undo):
            self.bound_sum += before - self._edge_bound(e)
            self.leaf_sum += before_leaf - self._edge_leaf(e)
            self.estate[e * self.kb + b] = 0
            self.possible[e] += 1
            if new == 1:
                self.counted[e] -= 1

    # --- interaction bookkeeping ---

    def _apply_interactions(self, pos: int, chosen: int, undo: list) -> None:
        for si in self.int_by_vert[pos]:
            s, c = self.interactions[si]
            for b in range(1, self.kb + 1):
                rec = None
                if chosen == b:
                    self.int_in[si][b - 1] += 1
                    if self.int_in[si][b - 1] == len(s) and self.int_out[si][b - 1] == 0:
                        self.int_active[b] += c
                        if c < 0:
                            self.int_pot_neg[b] -= c
                        rec = ("activate", si, b)
                    else:
                        rec = ("in", si, b)
                else:
                    self.int_out[si][b - 1] += 1
                    if self.int_out[si][b - 1] == 1 and c < 0:
                        self.int_pot_neg[b] -= c
                        rec = ("kill_neg", si, b)
                    else:
                        rec = ("out", si, b)
                undo.append(rec)

    def _undo_interactions(self, undo: list) -> None:
        for tag, si, b in reversed(undo):
            s, c = self.interactions[si]
            if tag == "activate":
                self.int_in[si][b - 1] -= 1
                self.int_active[b] -= c
                if c < 0:
                    self.int_pot_neg[b] += c
            elif tag == "in":
                self.int_in[si][b - 1] -= 1
            elif tag == "kill_neg":
                self.int_out[si][b - 1] -= 1
                self.int_pot_neg[b] += c
            else:
                self.int_out[si][b - 1] -= 1

    # --- cost bounds ---

    def _min_cost(self, b: int, idx: int) -> float:
        return (self.decided_cost[b] + self.decided_obs[b] + self.suffix_min[idx]
                + self.int_active[b] + self.int_pot_neg[b])

    def _budget_ok(self, idx: int) -> bool:
        if self.batch_budget is not None:
            for b in range(1, self.kb + 1):
                if self._min_cost(b, idx) > self.batch_budget[b - 1] + FEAS_TOL:
                    return False
        if self.inst.total_budget is not None:
            min_total = self.decided_ci_total + sum(
                self.int_active[b] + self.int_pot_neg[b] for b in range(1, self.kb + 1)
            )
            if min_total > self.inst.total_budget + FEAS_TOL:
                return False
        return True

    def _bound(self, idx: int) -> float:
        if self.penalty == 0.0:
            return self.bound_sum
        return self.bound_sum - self.penalty * sum(
            self._min_cost(b, idx) for b in range(1, self.kb + 1)
        )

    # --- leaf recording ---

    def _record_leaf(self) -> None:
        value = self.leaf_sum
        if self.penalty:
            value -= self.penalty * sum(
                self.decided_cost[b] + self.decided_obs[b] + self.int_active[b]
                for b in range(1, self.kb + 1)
            )
        if value < self.best - self.tol:
            return
        batches = tuple(
            frozenset(self.verts[p] for p in range(self.nv) if self.choice[p] == b)
            for b in range(1, self.kb + 1)
        )
        if value > self.best + self.tol:
            self.best = value
            self.optima = [batches]
            self.reservoir = batches
            self.optima_seen = 1
            return
        self.optima_seen += 1
        if self.enumerating:
            self.optima.append(batches)
        elif self.rng.random() < 1.0 / self.optima_seen:
            self.reservoir = batches

    def _dfs(self, idx: int) -> None:
        if self._bound(idx) < self.best - self.tol:
            return
        if not self._budget_ok(idx):
            return
        if idx == self.nv:
            self._record_leaf()
            return
        v = self.verts[idx]
        # try intervening first so strong incumbents tighten the bound early
        choices = [b for b in range(1, self.kb + 1) if self.k_used[b] < self.inst.k_max] + [0]
        for c in choices:
            self.choice[idx] = c
            if c > 0:
                self.k_used[c] += 1
                self.decided_cost[c] += self.ci[v]
                for b in range(1, self.kb + 1):
                    if b != c:
                        self.decided_obs[b] += self.co[v]
                self.decided_ci_total += self.ci[v]
            else:
                for b in range(1, self.kb + 1):
                    self.decided_obs[b] += self.co[v]
            edge_undo: list = []
            int_undo: list = []
            self._refresh_edges(idx, edge_undo)
            self._apply_interactions(idx, c, int_undo)
            self._dfs(idx + 1)
            self._undo_interactions(int_undo)
            self._undo_edges(edge_undo)
            if c > 0:
                self.k_used[c] -= 1
                self.decided_cost[c] -= self.ci[v]
                for b in range(1, self.kb + 1):
                    if b != c:
                        self.decided_obs[b] -= self.co[v]
                self.decided_ci_total -= self.ci[v]
            else:
                for b in range(1, self.kb + 1):
                    self.decided_obs[b] -= self.co[v]
            self.choice[idx] = -1

    def run(self) -> IpSolution:
        self._dfs(0)
        if self.best == -math.inf:
            raise InfeasibleError("no intervention set satisfies the budget")
        if self.enumerating:
            ordered = sorted(self.optima, key=lambda bs: tuple(sorted(b) for b in bs))
            pick = ordered[self.rng.randrange(len(ordered))]
            status = f"optimal; drawn uniformly from {len(ordered)} enumerated optima"
        else:
            pick = self.reservoir
            status = f"optimal; reservoir-sampled from {self.optima_seen} encountered optima"
        indicators = tuple(indicator_assignment(self.inst, x) for x in pick)
        return IpSolution(pick, self.best, status, indicators)


def solve(instance: IpInstance, rng: random.Random | None = None) -> IpSolution:
    """Exactly optimal intervention choice for the instance; ties are broken
    uniformly at random using ``rng``."""
    return _Search(instance, rng or random.Random(0)).run()


# --- LP-style text dump for cross-checking with external MILP tools ---

def to_lp_text(instance: IpInstance) -> str:
    """Single-batch instance as LP-format text (objective + constraints),
    suitable for cross-checking with an external MILP tool."""
    if instance.k_batch != 1:
        raise ConfigError("LP dump supports single-batch instances")

    def terms(pairs: list[tuple[str, float]]) -> str:
        parts = []
        for name, c in pairs:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag:g} "
            parts.append(f"{sign} {coef}{name}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text

    def yname(s: frozenset[int]) -> str:
        return "Y_" + "_".join(map(str, sorted(s)))

    viable = set(instance.viable)
    inter = [(s, c) for s, c in instance.costs.interactions if s <= viable]
    penalized = instance.objective.kind is ObjectiveKind.COST_PENALTY
    lam = instance.objective.penalty if penalized else 0.0

    ids = (
        [(f"IDU_{i}_{j}", w) for (i, j), w in zip(instance.unknown_pairs, instance.w_unknown)]
        + [(f"IDS_{i}_{j}", w) for (i, j), w in zip(instance.semi_edges, instance.w_semi)]
        + [(f"IDA_{i}_{j}", w) for (i, j), w in zip(instance.adjacent_pairs, instance.w_adjacent)]
    )
    obj = list(ids)
    lines = ["\\ adaptive intervention selection instance", "Maximize"]
    if penalized:
        obj += [(f"X_{v}", -lam * (instance.costs.intervention[v] - instance.costs.observation[v]))
                for v in instance.viable]
        obj += [(yname(s), -lam * c) for s, c in inter]
        const = -lam * sum(instance.costs.observation[v] for v in instance.viable)
        lines.insert(1, f"\\ constant objective term {const:g} omitted")
    obj = [(n, c) for n, c in obj if c != 0]
    lines.append(f" obj: {terms(obj) if obj else '0 X_none'}")
    lines.append("Subject To")

    if instance.viable:
        lines.append(f" kmax: {terms([(f'X_{v}', 1.0) for v in instance.viable])}"
                     f" <= {instance.k_max}")
    if instance.budget is not None and instance.viable:
        co_sum = sum(instance.costs.observation[v] for v in instance.viable)
        row = [(f"X_{v}", instance.costs.intervention[v] - instance.costs.observation[v])
               for v in instance.viable]
        row += [(yname(s), c) for s, c in inter]
        lines.append(f" budget: {terms(row)} <= {instance.budget - co_sum:g}")
    if inter and (instance.budget is not None or penalized):
        for s, _ in inter:
            y = yname(s)
            for v in sorted(s):
                lines.append(f" act_{y}_{v}: {y} - X_{v} <= 0")
            row = [(f"X_{v}", 1.0) for v in sorted(s)] + [(y, -1.0)]
            lines.append(f" act_{y}_all: {terms(row)} <= {len(s) - 1}")

    for i, j in instance.orientation_vars:
        lines.append(f" osrc_{i}_{j}: O_{i}_{j} - X_{i} <= 0")
        lines.append(f" otgt_{i}_{j}: O_{i}_{j} + X_{j} <= 1")
    for i, j in instance.adjacency_vars:
        lines.append(f" asrc_{i}_{j}: A_{i}_{j} + X_{i} <= 1")
        lines.append(f" atgt_{i}_{j}: A_{i}_{j} + X_{j} <= 1")
    for i, j in instance.unknown_pairs:
        lines.append(f" upd_u_{i}_{j}: IDU_{i}_{j} - O_{i}_{j} - O_{j}_{i} - A_{i}_{j} <= 0")
    for i, j in instance.semi_edges:
        a, b = pair_of(i, j)
        lines.append(f" upd_s_{i}_{j}: IDS_{i}_{j} - O_{i}_{j} - A_{a}_{b} <= 0")
    for i, j in instance.adjacent_pairs:
        lines.append(f" upd_a_{i}_{j}: IDA_{i}_{j} - O_{i}_{j} - O_{j}_{i} <= 0")

    lines.append("Binary")
    names = [f"X_{v}" for v in instance.viable]
    names += [f"O_{i}_{j}" for i, j in instance.orientation_vars]
    names += [f"A_{i}_{j}" for i, j in instance.adjacency_vars]
    names += [n for n, _ in ids]
    if inter and (instance.budget is not None or penalized):
        names += [yname(s) for s, _ in inter]
    for start in range(0, len(names), 8):
        lines.append(" " + " ".join(names[start:start + 8]))
    lines.append("End")
    return "\n".join(lines) + "\n"
