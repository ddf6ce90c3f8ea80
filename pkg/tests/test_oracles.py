from itertools import permutations, product

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from apexminor.certify import verify_decomposition, verify_minor_model
from apexminor.constructions import lower_bound_graph
from apexminor.errors import OracleLimitError
from apexminor.graph import Graph, complete_bipartite, complete_graph, make_grid, path_graph, star_graph
from apexminor.oracles import OracleLimits, exact_treewidth, minor_test, planarity_test

from conftest import connected_graphs, graphs


def brute_treewidth(g: Graph) -> int:
    """Minimum over all elimination orders of the largest eliminated degree."""
    if g.n == 0:
        return -1
    best = g.n - 1
    for order in permutations(range(g.n)):
        adj = [set(a) for a in g.adj]
        width = 0
        for v in order:
            nb = adj[v]
            width = max(width, len(nb))
            for a in nb:
                adj[a] |= nb - {a}
                adj[a].discard(v)
            adj[v] = set()
        best = min(best, width)
    return best


def brute_is_minor(g: Graph, h: Graph) -> bool:
    """Try every labelling of host vertices by pattern vertex or 'deleted'."""
    k = h.n
    for labels in product(range(k + 1), repeat=g.n):
        sets = [[v for v in range(g.n) if labels[v] == u] for u in range(k)]
        if any(not s or not g.is_connected_subset(s) for s in sets):
            continue
        if all(any(g.has_edge(a, b) for a in sets[u] for b in sets[v]) for u, v in h.edges):
            return True
    return False


@pytest.mark.parametrize("n", [2, 3, 4])
def test_grid_treewidth(n):
    g, _ = make_grid(n, n)
    tw, dec = exact_treewidth(g, with_decomposition=True)
    assert tw == n
    assert verify_decomposition(g, dec) == ([], n)


def test_treewidth_examples():
    assert exact_treewidth(complete_graph(5)) == 4
    assert exact_treewidth(path_graph(10)) == 1
    assert exact_treewidth(star_graph(7)) == 1
    assert exact_treewidth(Graph.empty(3)) == 0
    assert exact_treewidth(complete_bipartite(3, 3)) == 3
    assert exact_treewidth(Graph.empty(40)) == 0
    with pytest.raises(OracleLimitError):
        exact_treewidth(complete_graph(19))


def test_treewidth_reductions_on_large_graphs():
    big_tree = Graph.from_edges(300, [(v // 3, v) for v in range(1, 300)])
    assert exact_treewidth(big_tree) == 1
    two_k5 = Graph.from_edges(10, list(complete_graph(5).edges) + [(u + 5, v + 5) for u, v in complete_graph(5).edges])
    assert exact_treewidth(two_k5) == 4


@given(graphs(max_n=6), st.lists(st.integers(0, 50), max_size=40))
def test_pendant_trees_do_not_change_treewidth(core, attach):
    # hang a random forest off the core; treewidth is max(core, 1 if any edge)
    edges = list(core.edges)
    n = core.n
    for a in attach:
        if n:
            edges.append((a % n, n))
            n += 1
    g = Graph.from_edges(n, edges)
    tw, dec = exact_treewidth(g, with_decomposition=True)
    expect = max(brute_treewidth(core), 1 if g.edge_count else 0) if core.n else -1
    assert tw == expect
    assert verify_decomposition(g, dec) == ([], tw)


@given(graphs(max_n=7))
def test_treewidth_matches_brute_force(g):
    tw, dec = exact_treewidth(g, with_decomposition=True)
    assert tw == brute_treewidth(g)
    violations, width = verify_decomposition(g, dec) if g.n else ([], -1)
    assert violations == [] and width == tw


@given(connected_graphs(min_n=2, max_n=18, max_extra=30))
@settings(max_examples=25)
def test_treewidth_witness_verifies(g):
    tw, dec = exact_treewidth(g, with_decomposition=True)
    assert verify_decomposition(g, dec) == ([], tw)
    assert tw <= brute_upper_bound(g)


def brute_upper_bound(g):
    # networkx heuristics give valid upper bounds
    ng = nx.Graph(list(g.edges))
    ng.add_nodes_from(range(g.n))
    return nx.algorithms.approximation.treewidth_min_fill_in(ng)[0]


def test_minor_examples():
    g, _ = make_grid(3, 3)
    m = minor_test(g, complete_graph(4))
    assert m is not None and verify_minor_model(m) == []
    g5, _ = make_grid(5, 5)
    assert minor_test(g5, complete_graph(5)) is None
    assert minor_test(path_graph(2), path_graph(2)) is not None
    assert minor_test(complete_graph(4), complete_graph(5)) is None
    with pytest.raises(OracleLimitError):
        minor_test(g, complete_graph(7))
    with pytest.raises(OracleLimitError):
        minor_test(g, complete_graph(3), OracleLimits(max_minor_host=8))


def test_single_edge_in_connected_hosts():
    for n in range(2, 10):
        assert minor_test(path_graph(n), path_graph(2)) is not None


@given(graphs(max_n=8), graphs(max_n=4))
@settings(max_examples=80)
def test_minor_matches_brute_force(g, h):
    if (h.n + 1) ** g.n > 70_000:
        g = g.induced(range(min(g.n, 6)))[0]
    m = minor_test(g, h)
    assert (m is not None) == brute_is_minor(g, h)
    if m is not None:
        assert verify_minor_model(m) == []


def outerplanar_fan(n):
    """Path 1..n-1 plus a hub 0 on every path vertex (outerplanar)."""
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n - 1)] + [(0, i) for i in range(1, n)])


@pytest.mark.parametrize("n", range(9, 13))
def test_not_minor_on_larger_hosts(n):
    cycle = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    assert minor_test(cycle, complete_graph(4)) is None
    fan = outerplanar_fan(n)
    assert minor_test(fan, complete_graph(4)) is None
    assert minor_test(fan, complete_bipartite(2, 3)) is None
    assert minor_test(fan, complete_graph(3)) is not None
    ladder, _ = make_grid(3, n // 3)
    assert minor_test(ladder, complete_graph(5)) is None
    assert minor_test(ladder, complete_graph(4)) is not None


def test_planarity_examples():
    assert not planarity_test(complete_graph(5))
    assert not planarity_test(complete_bipartite(3, 3))
    assert planarity_test(complete_graph(4))
    for rows in range(1, 9):
        for cols in range(1, 9):
            assert planarity_test(make_grid(rows, cols)[0])
    assert planarity_test(make_grid(225, 225)[0])


@pytest.mark.parametrize("r,k", [(r, k) for r in range(1, 5) for k in range(1, 5)])
def test_lower_bound_parts_planar(r, k):
    _, _, wit = lower_bound_graph(r, k)
    assert planarity_test(wit.planar_part)


@given(graphs(max_n=9))
def test_edge_count_filter_consistent(g):
    ng = nx.Graph(list(g.edges))
    ng.add_nodes_from(range(g.n))
    verdict = nx.check_planarity(ng)[0]
    assert planarity_test(g) == verdict
    if g.n >= 3 and g.edge_count > 3 * g.n - 6:
        assert not verdict
