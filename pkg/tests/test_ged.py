import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import random_graph
from graphstream.exceptions import DimensionMismatchError, GedBudgetExceeded
from graphstream.ged import (
    DistanceCache,
    GedCostModel,
    GedPolicy,
    GraphDistance,
    approx_ged,
    distance,
    exact_ged,
    pairwise_distances,
    path_cost,
)
from graphstream.graph import AttributedGraph
from oracles import brute_force_ged

TOL = 1e-9


def test_identical_graphs_have_zero_distance(triangle):
    res = exact_ged(triangle, triangle)
    assert res.distance == 0.0 and res.exact
    assert approx_ged(triangle, triangle).distance == 0.0


def test_single_node_against_empty_graph_costs_one_deletion():
    one = AttributedGraph.from_arrays("one", [[0.3, 0.4]], [])
    empty = AttributedGraph("empty", (), (), False, 2, 0)
    assert exact_ged(one, empty, GedCostModel(node_delete=1.0)).distance == pytest.approx(1.0)
    assert exact_ged(empty, one, GedCostModel(node_insert=2.5)).distance == pytest.approx(2.5)


def test_one_node_against_three_isolated_nodes():
    g1 = AttributedGraph.from_arrays("a", [[0.0, 0.0]], [])
    pts = [[0.5, 0.0], [3.0, 4.0], [0.0, 2.0]]
    g2 = AttributedGraph.from_arrays("b", pts, [])
    expected = 2.0 + min(1.0 * 2, *(math.dist((0.0, 0.0), p) for p in pts))
    assert approx_ged(g1, g2).distance == pytest.approx(expected)
    assert exact_ged(g1, g2).distance == pytest.approx(expected)


def test_four_node_pair_matches_brute_force(rng):
    g1, g2 = random_graph(rng, 4, graph_id="x"), random_graph(rng, 4, graph_id="y")
    assert exact_ged(g1, g2).distance == pytest.approx(brute_force_ged(g1, g2), abs=TOL)


def test_oracle_equivalence_on_random_pairs(rng):
    for _ in range(220):
        g1 = random_graph(rng, int(rng.integers(0, 6)), p_edge=rng.uniform(0.2, 0.8))
        g2 = random_graph(rng, int(rng.integers(0, 6)), p_edge=rng.uniform(0.2, 0.8))
        exact = exact_ged(g1, g2).distance
        assert abs(exact - brute_force_ged(g1, g2)) <= TOL
        assert approx_ged(g1, g2).distance >= exact - TOL


@pytest.mark.parametrize("metric", ["euclidean", "angle", "discrete"])
def test_oracle_with_edge_attributes(rng, metric):
    cm = GedCostModel(edge_subst=metric)
    for _ in range(25):
        g1 = random_graph(rng, int(rng.integers(1, 5)), edge_dim=1)
        g2 = random_graph(rng, int(rng.integers(1, 5)), edge_dim=1)
        expected = brute_force_ged(g1, g2, edge_metric=metric)
        assert exact_ged(g1, g2, cm).distance == pytest.approx(expected, abs=TOL)


def test_oracle_on_directed_graphs_with_asymmetric_costs(rng):
    cm = GedCostModel(node_insert=0.7, node_delete=1.3, edge_insert=0.4, edge_delete=1.1)
    for _ in range(40):
        g1 = random_graph(rng, int(rng.integers(0, 5)), directed=True)
        g2 = random_graph(rng, int(rng.integers(0, 5)), directed=True)
        expected = brute_force_ged(g1, g2, 0.7, 1.3, 0.4, 1.1)
        assert exact_ged(g1, g2, cm).distance == pytest.approx(expected, abs=TOL)
        assert approx_ged(g1, g2, cm).distance >= expected - TOL


def test_root_heuristic_never_exceeds_distance(rng):
    for _ in range(60):
        g1, g2 = random_graph(rng, int(rng.integers(1, 7))), random_graph(rng, int(rng.integers(1, 7)))
        res = exact_ged(g1, g2)
        assert res.root_bound <= res.distance + TOL


def test_edit_path_prices_to_the_distance(rng):
    g1, g2 = random_graph(rng, 5), random_graph(rng, 4)
    res = exact_ged(g1, g2, with_path=True)
    assert sum(op.cost for op in res.edit_path) == pytest.approx(res.distance)
    assert path_cost(g1, g2, res.mapping, GedCostModel())[0] == pytest.approx(res.distance)


def test_budget_exhaustion_is_signalled_and_distance_falls_back(rng):
    g1, g2 = random_graph(rng, 9, graph_id="p"), random_graph(rng, 9, graph_id="q")
    with pytest.raises(GedBudgetExceeded) as info:
        exact_ged(g1, g2, budget=1)
    assert info.value.budget == 1
    res = distance(g1, g2, policy=GedPolicy(exact_below_n_nodes=10, budget=1))
    assert not res.exact
    assert res.distance == approx_ged(g1, g2).distance


def test_policy_dispatch_by_size(rng):
    small = distance(random_graph(rng, 4), random_graph(rng, 4), policy=GedPolicy(10))
    big = distance(random_graph(rng, 50, p_edge=0.1), random_graph(rng, 50, p_edge=0.1), policy=GedPolicy(10))
    assert small.exact and not big.exact


def test_self_distance_is_zero_under_any_policy(rng):
    g = random_graph(rng, 30, p_edge=0.2)
    for policy in (GedPolicy(0), GedPolicy(100)):
        assert distance(g, g, policy=policy).distance == 0.0


def test_dimension_mismatch_rejected():
    a = AttributedGraph.from_arrays("a", [[0.0, 0.0]], [])
    b = AttributedGraph.from_arrays("b", [[0.0, 0.0, 0.0]], [])
    with pytest.raises(DimensionMismatchError):
        exact_ged(a, b)
    with pytest.raises(DimensionMismatchError):
        approx_ged(a, b)
    d = AttributedGraph.from_arrays("d", [[0.0, 0.0]], [], directed=True)
    with pytest.raises(DimensionMismatchError):
        exact_ged(a, d)


def test_invalid_costs_rejected():
    with pytest.raises(ValueError):
        GedCostModel(node_insert=-1.0)
    with pytest.raises(ValueError):
        GedCostModel(node_subst="manhattan")
    with pytest.raises(ValueError):
        GedPolicy(budget=0)


def test_substitution_costs_vanish_on_identical_attributes():
    x = np.array([[0.2, 1.0], [3.0, -1.0]])
    for metric in ("euclidean", "scaled_euclidean", "discrete"):
        assert np.allclose(np.diag(GedCostModel(node_subst=metric).node_cost_matrix(x, x)), 0.0)
    for metric in ("euclidean", "angle", "discrete", "zero"):
        assert GedCostModel(edge_subst=metric).edge_cost((0.4,), (0.4,)) == 0.0


def test_angle_cost_wraps_at_pi():
    cm = GedCostModel(edge_subst="angle")
    assert cm.edge_cost((0.1,), (math.pi - 0.1,)) == pytest.approx(0.2)
    assert cm.edge_cost((0.0,), (math.pi,)) == pytest.approx(0.0)


def test_scaled_euclidean_multiplies_substitution():
    x1, x2 = np.array([[0.0, 0.0]]), np.array([[3.0, 4.0]])
    assert GedCostModel(node_subst="scaled_euclidean", node_subst_weight=0.5).node_cost_matrix(x1, x2)[0, 0] == 2.5


def test_pairwise_single_graph(triangle):
    assert pairwise_distances([triangle]).tolist() == [[0.0]]


def test_pairwise_with_duplicate(triangle, path3):
    twin = AttributedGraph(triangle.id + "-copy", triangle.nodes, triangle.edges, False, 2, 0)
    d = pairwise_distances([triangle, twin, path3])
    h = exact_ged(triangle, path3).distance
    assert d[0, 1] == d[1, 0] == 0.0
    assert d[0, 2] == d[2, 0] == d[1, 2] == d[2, 1] == pytest.approx(h)
    assert np.all(np.diag(d) == 0)


def test_pairwise_cache_prevents_recomputation(rng):
    graphs = [random_graph(rng, 5, graph_id=f"g{i}") for i in range(6)]
    cache = DistanceCache()
    first = pairwise_distances(graphs, cache=cache)
    misses = cache.misses
    hits = cache.hits
    second = pairwise_distances(graphs, cache=cache)
    assert np.array_equal(first, second)
    assert cache.misses == misses
    assert cache.hits - hits == 15


def test_parallel_pairwise_matches_sequential(rng):
    graphs = [random_graph(rng, 5, graph_id=f"g{i}") for i in range(6)]
    assert np.array_equal(pairwise_distances(graphs), pairwise_distances(graphs, n_jobs=2))


def test_cache_is_lru_bounded():
    cache = DistanceCache(capacity=2)
    for k in range(3):
        cache.put(k, float(k))
    assert len(cache) == 2 and cache.get(0) is None and cache.get(2) == 2.0


def test_asymmetric_costs_are_averaged_for_matrices(rng):
    cm = GedCostModel(node_insert=0.5, node_delete=2.0)
    g1, g2 = random_graph(rng, 3, graph_id="a"), random_graph(rng, 5, graph_id="b")
    metric = GraphDistance(cm, GedPolicy(), DistanceCache())
    both = 0.5 * (exact_ged(g1, g2, cm).distance + exact_ged(g2, g1, cm).distance)
    assert metric(g1, g2) == pytest.approx(both)
    assert metric(g2, g1) == pytest.approx(both)


small_graphs = st.builds(
    lambda seed, n, p: random_graph(np.random.default_rng(seed), n, p_edge=p),
    st.integers(0, 10**6), st.integers(0, 4), st.floats(0.0, 1.0),
)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_graphs, small_graphs)
def test_symmetry_under_symmetric_costs(a, b):
    assert abs(exact_ged(a, b).distance - exact_ged(b, a).distance) <= TOL
    assert abs(approx_ged(a, b).distance - approx_ged(b, a).distance) <= TOL


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_graphs, small_graphs, small_graphs)
def test_exact_distance_satisfies_triangle_inequality(a, b, c):
    ab, bc, ac = (exact_ged(x, y).distance for x, y in ((a, b), (b, c), (a, c)))
    assert min(ab, bc, ac) >= 0.0
    assert ac <= ab + bc + TOL


def test_cache_does_not_alias_reused_ids(triangle):
    metric = GraphDistance(GedCostModel(), GedPolicy(), DistanceCache())
    a = AttributedGraph.from_arrays("same", [[0.0, 0.0]], [])
    b = AttributedGraph.from_arrays("same", [[3.0, 4.0]], [])
    assert metric(a, triangle) != metric(b, triangle)
    assert metric(b, triangle) == pytest.approx(exact_ged(b, triangle).distance)
