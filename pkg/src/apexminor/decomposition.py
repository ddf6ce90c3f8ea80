"""BFS-layered path-decompositions and the tree-treewidth upper bound they give."""

from __future__ import annotations

from dataclasses import dataclass

from .certify import TreeDecomposition
from .errors import InvalidArgument
from .graph import BfsLayering, Graph, bfs_layering, contract_partition
from .oracles import DEFAULT_LIMITS, OracleLimits, exact_treewidth


@dataclass(frozen=True)
class LayeredDecomposition:
    base: TreeDecomposition
    root: int
    layering: BfsLayering


def layered_path_decomposition(g: Graph, u: int) -> LayeredDecomposition:
    """Bags ``{u} + V1 + V2, V2 + V3, V3 + V4, ...`` of the BFS layering from ``u``.

    With eccentricity ``e`` there are ``max(1, e - 1)`` bags; ``e <= 2``
    gives the single bag ``V(g)``.
    """
    lay = bfs_layering(g, u)
    e = lay.eccentricity
    bags = [{u} | lay.layer(1) | lay.layer(2)]
    for i in range(2, e):
        bags.append(lay.layer(i) | lay.layer(i + 1))
    return LayeredDecomposition(TreeDecomposition.path(bags), u, lay)


def contracted_layer_graph(g: Graph, u: int, i: int) -> tuple[Graph, int, dict[int, int]]:
    """``G_i``: ``G[V_0..V_{i+1}]`` with ``V_0..V_{i-1}`` contracted to one vertex.

    Returns ``(G_i, u_i, old_to_new)`` where ``old_to_new`` covers
    ``V_i + V_{i+1}`` and ``u_i`` is vertex 0.
    """
    lay = bfs_layering(g, u)
    if not 1 <= i <= lay.eccentricity:
        raise InvalidArgument(f"layer {i} does not exist (eccentricity {lay.eccentricity})")
    inner = set().union(*(lay.layer(j) for j in range(i)))
    keep = inner | lay.layer(i) | lay.layer(i + 1)
    sub, old = g.induced(keep)
    new_of_old = {v: k for k, v in enumerate(old)}
    gi, to_new = contract_partition(sub, [[new_of_old[v] for v in inner]])
    mapping = {v: to_new[new_of_old[v]] for v in keep - inner}
    return gi, 0, mapping


def ttw_upper(g: Graph, u: int, limits: OracleLimits = DEFAULT_LIMITS) -> int:
    """Largest exact treewidth among the bags of the layered decomposition from ``u``.

    Upper-bounds the tree-treewidth of ``g``. Raises
    :class:`~apexminor.errors.OracleLimitError` if a bag is too large.
    """
    dec = layered_path_decomposition(g, u)
    return max(exact_treewidth(g.induced(bag)[0], limits) for bag in dec.base.bags)
