"""Adaptive intervention planning for causal DAG discovery.

Maintains a five-class knowledge state over vertex pairs, selects each
round's intervention set by solving an exact 0-1 program, updates the state
from test outcomes, propagates orientations with Meek's rules, and iterates
until the causal DAG is fully identified.
"""

from .dag import Dag, pair_of, skeleton, topological_order, v_structures, validate_dag
from .gen_io import (
    ErdosRenyiSpec,
    GraphStats,
    erdos_renyi_dag,
    load_bif_structure,
    load_edge_list,
    load_fixture,
    save_edge_list,
    structural_stats,
)
from .ip import (
    CostModel,
    IpInstance,
    IpSolution,
    ObjectiveKind,
    ObjectiveSpec,
    build_instance,
    cost_of,
    gain,
    solve,
    solve_bruteforce,
    to_lp_text,
)
from .knowledge import (
    AdjacencyTest,
    EdgeClass,
    Outcome,
    OrientationTest,
    PartialGraph,
    ambiguity,
    apply_outcomes,
)
from .mec import cpdag_of, enumerate_mec
from .meek import meek_closure
from .oracle import InteractiveOracle, SimulatedOracle, answer_simulated
from .planner import (
    PlannerConfig,
    RoundLog,
    RunRecord,
    enabled_tests,
    propose,
    run,
    run_round,
    run_simulation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
