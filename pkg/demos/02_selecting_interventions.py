"""How one round's intervention set is chosen: the decision program, its
closed-form gain, budgets, and superadditive joint-intervention costs.

Run: python demos/02_selecting_interventions.py
"""
import random

from causalplan import (
    CostModel,
    PartialGraph,
    build_instance,
    cost_of,
    cpdag_of,
    gain,
    solve,
    solve_bruteforce,
    to_lp_text,
    validate_dag,
)

# The chain's essential graph: both edges present but unoriented.
chain = cpdag_of(validate_dag(3, [(0, 1), (1, 2)]))

print("gain of each single-vertex intervention on the chain state:")
for v in range(3):
    print(f"  intervene {{{v}}} -> gain {gain(chain, {v}):g}")
print(f"  intervene {{}}   -> gain {gain(chain, set()):g}")

instance = build_instance(chain, k_max=1)
solution = solve(instance, random.Random(0))
print("\nexact optimum with k_max=1:", sorted(solution.x),
      "objective", solution.objective_value)
print("status:", solution.status)

reference = solve_bruteforce(instance)
print("brute-force agrees:", reference.objective_value,
      [sorted(x) for x in reference.optima])

# Budgets with a superadditive joint cost: intervening on both endpoints of
# one edge together costs 1 + 1 + 8 = 10, so a budget of 5 forbids the pair.
pkg = PartialGraph.build(2, adjacent=[(0, 1)])
costs = CostModel((1.0, 1.0), (0.0, 0.0), ((frozenset({0, 1}), 8.0),))
print("\njoint cost of {0,1}:", cost_of({0, 1}, costs, (0, 1)))
tight = solve(build_instance(pkg, costs, k_max=2, budget=5.0), random.Random(1))
print("under budget 5 the solver picks", sorted(tight.x),
      "with objective", tight.objective_value)

# The whole program can be dumped as LP text for an external MILP tool.
print("\nLP dump of the chain instance:\n")
print(to_lp_text(instance))
