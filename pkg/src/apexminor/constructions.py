"""Lower-bound graphs: a grid with an apex over a sparse set of block centres."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import isqrt

from .errors import InvalidArgument
from .graph import Graph, GridSpec, bfs_distances, make_grid


@dataclass(frozen=True)
class LowerBoundWitness:
    """Structural certificate for a lower-bound graph.

    Euler genus at most ``2k^2`` follows from ``planar_part`` being planar and
    the apex having degree ``k^2`` (one handle per apex edge).
    """

    r: int
    k: int
    apex: int
    w_set: tuple[int, ...]
    grid: GridSpec
    planar_part: Graph
    diagonal_edges: tuple[tuple[int, int], ...]
    gadget: str = "block X-diagonals"


def _ceil_sqrt(n: int) -> int:
    c = isqrt(n)
    return c if c * c == n else c + 1


def lower_bound_graph(r: int, k: int) -> tuple[Graph, GridSpec, LowerBoundWitness]:
    """Side ``(2r-1)k`` grid, X-shaped diagonals in every block, apex on block centres.

    Grid vertices keep their row-major ids; the apex is the last vertex.
    """
    if r < 1 or k < 1:
        raise InvalidArgument(f"r and k must be positive, got r={r}, k={k}")
    b = 2 * r - 1
    side = b * k
    grid_graph, grid = make_grid(side, side)
    centres = [(b * x - (r - 1), b * y - (r - 1)) for x in range(1, k + 1) for y in range(1, k + 1)]
    diagonals = []
    for cx, cy in centres:
        for d in range(-(r - 1), r - 1):
            # main diagonal step lives in the unit face with corner (cx+d, cy+d),
            # anti-diagonal step in the face with corner (cx+d, cy-d-1)
            diagonals.append((grid.vertex(cx + d, cy + d), grid.vertex(cx + d + 1, cy + d + 1)))
            diagonals.append((grid.vertex(cx + d, cy - d), grid.vertex(cx + d + 1, cy - d - 1)))
    planar = Graph.from_edges(grid.size, list(grid_graph.edges) + diagonals)
    w_set = tuple(sorted(grid.vertex(x, y) for x, y in centres))
    g = planar.add_vertex(w_set)
    witness = LowerBoundWitness(r, k, grid.size, w_set, grid, planar, tuple(diagonals))
    return g, grid, witness


def check_witness(g: Graph, wit: LowerBoundWitness, planarity=None) -> dict[str, bool]:
    """Evaluate the four witness checks; ``planarity`` is a callable Graph -> bool."""
    grid = wit.grid
    grid_ok = all(g.has_edge(u, v) for u, v in grid.grid_edges())
    dist = bfs_distances(g, wit.apex)
    radius_ok = min(dist) >= 0 and max(dist) <= wit.r
    part, old = g.without(wit.apex)
    part_ok = part == wit.planar_part and old == list(range(grid.size))
    if planarity is not None:
        part_ok = part_ok and planarity(part)
    degree_ok = g.degree(wit.apex) == wit.k ** 2 and set(g.adj[wit.apex]) == set(wit.w_set)
    # every grid vertex within r-1 of W inside G - alpha
    near = multi_source_distances(wit.planar_part, wit.w_set)
    cover_ok = max(near) <= wit.r - 1
    return {"grid_subgraph": grid_ok, "radius": radius_ok, "planar_part": part_ok,
            "apex_degree": degree_ok, "w_cover": cover_ok}


def multi_source_distances(g: Graph, sources) -> list[int]:
    dist = [-1] * g.n
    queue = deque(sources)
    for s in sources:
        dist[s] = 0
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return [d if d >= 0 else g.n for d in dist]


def lower_bound_params_genus(g: int, r: int) -> tuple[int, int]:
    """``k = floor(sqrt(g/2))`` and the grid side ``n = (2r-1)k``."""
    if g < 2:
        raise InvalidArgument(f"genus must be at least 2, got {g}")
    if r < 1:
        raise InvalidArgument(f"r must be positive, got {r}")
    k = isqrt(g // 2)
    return k, (2 * r - 1) * k


def apex_lb_params(t: int, r: int) -> tuple[int, int, bool]:
    """Parameters for a triangulation on ``t`` vertices plus a dominant vertex.

    ``k = ceil(sqrt((t-3)/6)) - 1``, ``n = (2r-1)k``; the flag records
    ``2k^2 < (t-3)/3``.
    """
    if t < 4:
        raise InvalidArgument(f"t must be at least 4, got {t}")
    if r < 1:
        raise InvalidArgument(f"r must be positive, got {r}")
    # c^2 >= (t-3)/6 iff c^2 >= ceil((t-3)/6) for integer c
    k = _ceil_sqrt(-(-(t - 3) // 6)) - 1
    return k, (2 * r - 1) * k, 6 * k * k < t - 3
