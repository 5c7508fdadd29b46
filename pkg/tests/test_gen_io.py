import math
import random
import statistics

import pytest

from causalplan import (
    ErdosRenyiSpec,
    erdos_renyi_dag,
    load_bif_structure,
    load_edge_list,
    load_fixture,
    save_edge_list,
    structural_stats,
    validate_dag,
)
from causalplan.errors import CycleError, ParseError


def test_er_p_zero_is_empty():
    assert erdos_renyi_dag(ErdosRenyiSpec(3, 0.0)).edges == frozenset()


def test_er_p_one_is_complete_ascending():
    dag = erdos_renyi_dag(ErdosRenyiSpec(3, 1.0))
    assert dag.edges == {(0, 1), (0, 2), (1, 2)}


def test_er_edges_ascend_and_count_is_plausible():
    counts = []
    for seed in range(300):
        dag = erdos_renyi_dag(ErdosRenyiSpec(16, 0.2, seed))
        assert all(i < j for i, j in dag.edges)
        counts.append(len(dag.edges))
    mean = statistics.mean(counts)
    assert abs(mean - 24.0) < 1.5  # Binomial(120, 0.2) mean


def test_er_seed_determinism():
    spec = ErdosRenyiSpec(12, 0.4, seed=99)
    assert erdos_renyi_dag(spec) == erdos_renyi_dag(spec)
    assert erdos_renyi_dag(spec) != erdos_renyi_dag(ErdosRenyiSpec(12, 0.4, seed=100))


def test_er_edge_count_distribution():
    counts = [len(erdos_renyi_dag(ErdosRenyiSpec(8, 0.5, seed)).edges)
              for seed in range(2000)]
    mean = statistics.mean(counts)
    se = math.sqrt(28 * 0.5 * 0.5 / 2000)
    assert abs(mean - 14.0) <= 3 * se


def test_er_spec_validation():
    with pytest.raises(ParseError):
        ErdosRenyiSpec(0, 0.5)
    with pytest.raises(ParseError):
        ErdosRenyiSpec(3, 1.5)


def test_edge_list_round_trip():
    dag = load_edge_list("0 1\n1 2")
    assert dag.edges == {(0, 1), (1, 2)} and dag.n == 3
    assert save_edge_list(dag) == "0 1\n1 2\n"
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(1, 10)
        edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n)
                          if rng.random() < 0.4)
        original = validate_dag(n, edges)
        again = load_edge_list(save_edge_list(original), n=n)
        assert again == original


def test_edge_list_text_normalization_round_trip():
    text = "# a comment\n\n0 1   # trailing\n1 2\n"
    assert save_edge_list(load_edge_list(text)) == "0 1\n1 2\n"


def test_edge_list_cycle_rejected():
    with pytest.raises(CycleError):
        load_edge_list("0 1\n1 0")


def test_edge_list_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        load_edge_list("0 1\nnot an edge")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        load_edge_list("0 1 2")
    with pytest.raises(ParseError):
        load_edge_list("-1 0")


def test_bif_structure_reader():
    text = """
network unknown {
}
variable rain {
  type discrete [ 2 ] { yes, no };
}
variable sprinkler {
  type discrete [ 2 ] { on, off };
}
variable wet {
  type discrete [ 2 ] { yes, no };
}
probability ( rain ) {
  table 0.2, 0.8;
}
probability ( sprinkler | rain ) {
  (yes) 0.01, 0.99;
  (no) 0.4, 0.6;
}
probability ( wet | sprinkler, rain ) {
  (on, yes) 0.99, 0.01;
}
"""
    dag, names = load_bif_structure(text)
    assert names == ["rain", "sprinkler", "wet"]
    assert dag.edges == {(0, 1), (1, 2), (0, 2)}


def test_bif_reader_rejects_undeclared_names():
    with pytest.raises(ParseError):
        load_bif_structure("variable a {\n}\nprobability ( b | a ) {\n}")


def test_stats_asia():
    s = structural_stats(load_fixture("asia"))
    assert (s.nodes, s.edges) == (8, 8)
    assert s.avg_degree == pytest.approx(2.00)
    assert s.min_degree == 1 and s.max_degree == 4
    assert round(s.stdev_degree, 2) == 0.93
    assert s.v_structures == 2


def test_stats_sachs():
    s = structural_stats(load_fixture("sachs"))
    assert (s.nodes, s.edges) == (11, 17)
    assert s.max_degree == 7 and s.min_degree == 2
    assert s.avg_degree == pytest.approx(3.09, abs=0.005)
    assert round(s.stdev_degree, 2) == 1.64
    assert s.v_structures == 0


def test_stats_chain():
    s = structural_stats(validate_dag(3, [(0, 1), (1, 2)]))
    assert s.min_degree == 1 and s.max_degree == 2
    assert s.avg_degree == pytest.approx(4 / 3)
    assert s.v_structures == 0
