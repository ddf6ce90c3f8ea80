import networkx as nx
import pytest

from apexminor.constructions import (apex_lb_params, check_witness, lower_bound_graph, lower_bound_params_genus,
                                     multi_source_distances)
from apexminor.errors import InvalidArgument
from apexminor.graph import bfs_distances, radius_and_centre
from apexminor.oracles import planarity_test

GRID = [(r, k) for r in range(1, 5) for k in range(1, 5)]


@pytest.mark.parametrize("r,k", GRID)
def test_witness_checks(r, k):
    g, grid, wit = lower_bound_graph(r, k)
    assert grid.rows == grid.cols == (2 * r - 1) * k
    assert check_witness(g, wit, planarity_test) == dict.fromkeys(
        ["grid_subgraph", "radius", "planar_part", "apex_degree", "w_cover"], True)
    b = 2 * r - 1
    assert set(wit.w_set) == {grid.vertex(b * x - (r - 1), b * y - (r - 1))
                              for x in range(1, k + 1) for y in range(1, k + 1)}
    assert radius_and_centre(g)[0] <= r


@pytest.mark.parametrize("r,k", GRID)
def test_blocks_reach_centre(r, k):
    """Inside each block every cell is within r-1 of the block centre using block edges only."""
    g, grid, wit = lower_bound_graph(r, k)
    b = 2 * r - 1
    for bx in range(k):
        for by in range(k):
            cells = [grid.vertex(bx * b + i, by * b + j) for i in range(1, b + 1) for j in range(1, b + 1)]
            block, old = wit.planar_part.induced(cells)
            centre = old.index(grid.vertex(bx * b + r, by * b + r))
            assert max(bfs_distances(block, centre)) <= r - 1


def test_small_examples():
    g, grid, wit = lower_bound_graph(1, 1)
    assert (g.n, g.edge_count) == (2, 1) and radius_and_centre(g)[0] == 1
    g, grid, wit = lower_bound_graph(3, 3)
    assert (grid.rows, len(wit.w_set), g.degree(wit.apex)) == (15, 9, 9)
    g, grid, wit = lower_bound_graph(2, 2)
    assert grid.rows == 6 and max(multi_source_distances(wit.planar_part, wit.w_set)) <= 1


def test_planar_part_agrees_with_networkx_embedding():
    for r, k in [(2, 2), (3, 3), (4, 2)]:
        _, _, wit = lower_bound_graph(r, k)
        h = nx.Graph(list(wit.planar_part.edges))
        ok, emb = nx.check_planarity(h)
        assert ok
        emb.check_structure()


def test_tampered_witness_fails():
    g, grid, wit = lower_bound_graph(2, 2)
    broken = g.add_vertex([])
    assert not check_witness(broken, wit, planarity_test)["radius"]


def test_params():
    assert lower_bound_params_genus(8, 2) == (2, 6)
    assert lower_bound_params_genus(2, 1) == (1, 1)
    k, n = lower_bound_params_genus(50, 3)
    assert (k, n) == (5, 25) and 2 * k * k <= 50
    assert apex_lb_params(27, 2) == (1, 3, True)
    assert apex_lb_params(9, 1)[:2] == (0, 0)
    assert apex_lb_params(99, 1) == (3, 3, True)
    for t in range(4, 2000):
        k, n, ok = apex_lb_params(t, 1)
        assert ok or k == 0
        assert 6 * (k + 1) ** 2 >= t - 3 > 6 * k * k or k == 0
    with pytest.raises(InvalidArgument):
        lower_bound_params_genus(1, 1)
    with pytest.raises(InvalidArgument):
        apex_lb_params(3, 1)
