"""Simple undirected graphs, grids, BFS layerings and contractions.

Vertices are dense 0-based integers. Grid coordinates are 1-based and map
to vertex ids in row-major order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidArgument, PreconditionError


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise InvalidArgument(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise InvalidArgument(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.edge_count))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled in increasing vertex order.

        Returns the subgraph and the list mapping new ids back to old ids.
        """
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[w]) for u in old for w in self.adj[u] if w in new_of and u < w]
        return Graph.from_edges(len(old), edges), old

    def without(self, v: int) -> tuple["Graph", list[int]]:
        return self.induced(w for w in range(self.n) if w != v)

    def add_vertex(self, neighbors: Iterable[int]) -> "Graph":
        """Copy of the graph with one new vertex (id ``n``) joined to ``neighbors``."""
        new = self.n
        return Graph.from_edges(self.n + 1, list(self.edges) + [(v, new) for v in neighbors])

    def is_connected_subset(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        if not vs:
            return False
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y in vs and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(vs)

    def is_connected(self) -> bool:
        return self.n == 0 or self.is_connected_subset(range(self.n))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}: vertices ``0..a-1`` on one side, ``a..a+b-1`` on the other."""
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """Hub is vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


@dataclass(frozen=True)
class GridSpec:
    """Coordinate addressing of a ``rows x cols`` grid.

    Cell ``(x, y)`` with ``1 <= x <= rows`` and ``1 <= y <= cols`` is vertex
    ``(x - 1) * cols + (y - 1)``.
    """

    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidArgument(f"grid dimensions must be positive, got {self.rows}x{self.cols}")

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def contains(self, x: int, y: int) -> bool:
        return 1 <= x <= self.rows and 1 <= y <= self.cols

    def vertex(self, x: int, y: int) -> int:
        if not self.contains(x, y):
            raise InvalidArgument(f"cell ({x}, {y}) outside {self.rows}x{self.cols} grid")
        return (x - 1) * self.cols + (y - 1)

    def coords(self, v: int) -> tuple[int, int]:
        if not 0 <= v < self.size:
            raise InvalidArgument(f"vertex {v} outside {self.rows}x{self.cols} grid")
        return v // self.cols + 1, v % self.cols + 1

    def cells(self):
        for x in range(1, self.rows + 1):
            for y in range(1, self.cols + 1):
                yield x, y

    def grid_edges(self) -> list[tuple[int, int]]:
        out = []
        for x, y in self.cells():
            v = self.vertex(x, y)
            if x < self.rows:
                out.append((v, v + self.cols))
            if y < self.cols:
                out.append((v, v + 1))
        return out


def make_grid(rows: int, cols: int) -> tuple[Graph, GridSpec]:
    spec = GridSpec(rows, cols)
    return Graph.from_edges(spec.size, spec.grid_edges()), spec


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InvalidArgument(f"vertex {v} not in graph with {g.n} vertices")


def _reachable_distances(g: Graph, v: int) -> list[int]:
    _check_vertex(g, v)
    dist = bfs_distances(g, v)
    for x, d in enumerate(dist):
        if d < 0:
            raise PreconditionError(f"graph is disconnected: vertex {x} unreachable from {v}", witness=x)
    return dist


@dataclass(frozen=True)
class BfsLayering:
    centre: int
    layers: tuple[frozenset[int], ...]
    distance: tuple[int, ...] = field(repr=False)

    @property
    def eccentricity(self) -> int:
        return len(self.layers) - 1

    def layer(self, i: int) -> frozenset[int]:
        """Layer ``V_i``; empty beyond the eccentricity."""
        if 0 <= i < len(self.layers):
            return self.layers[i]
        return frozenset()


def bfs_layering(g: Graph, v: int) -> BfsLayering:
    dist = _reachable_distances(g, v)
    layers: list[set[int]] = [set() for _ in range(max(dist) + 1)]
    for x, d in enumerate(dist):
        layers[d].add(x)
    return BfsLayering(v, tuple(frozenset(layer) for layer in layers), tuple(dist))


def eccentricity(g: Graph, v: int) -> int:
    return max(_reachable_distances(g, v))


def radius_and_centre(g: Graph) -> tuple[int, int]:
    """Minimum eccentricity and the smallest vertex attaining it."""
    if g.n == 0:
        raise InvalidArgument("radius of the empty graph is undefined")
    best = None
    for v in range(g.n):
        e = eccentricity(g, v)
        if best is None or e < best[0]:
            best = (e, v)
    return best


@dataclass(frozen=True)
class CentrePaths:
    """Shortest paths to a centre, all taken from one BFS tree."""

    centre: int
    parent: tuple[int, ...]
    distance: tuple[int, ...]

    def path(self, x: int) -> list[int]:
        """Vertex sequence from ``x`` to the centre."""
        out = [x]
        while out[-1] != self.centre:
            out.append(self.parent[out[-1]])
        return out

    def internal(self, x: int) -> list[int]:
        return self.path(x)[1:-1] if x != self.centre else []


def centre_paths(g: Graph, alpha: int) -> CentrePaths:
    _check_vertex(g, alpha)
    parent = [-1] * g.n
    dist = [-1] * g.n
    dist[alpha] = 0
    parent[alpha] = alpha
    queue = deque([alpha])
    while queue:
        x = queue.popleft()
        for y in sorted(g.adj[x]):
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)
    for x, d in enumerate(dist):
        if d < 0:
            raise PreconditionError(f"vertex {x} unreachable from centre {alpha}", witness=x)
    return CentrePaths(alpha, tuple(parent), tuple(dist))


def contract_partition(g: Graph, parts: Sequence[Iterable[int]]) -> tuple[Graph, list[int]]:
    """Contract each part to a single vertex.

    Part ``i`` becomes vertex ``i``; vertices outside every part follow as
    singletons in increasing order. Parallel edges merge and loops vanish.
    Returns the quotient and the map old vertex -> new vertex.
    """
    new_of = [-1] * g.n
    for i, part in enumerate(parts):
        part = list(part)
        if not part:
            raise InvalidArgument(f"part {i} is empty")
        for v in part:
            _check_vertex(g, v)
            if new_of[v] >= 0:
                raise InvalidArgument(f"parts {new_of[v]} and {i} overlap at vertex {v}")
            new_of[v] = i
        if not g.is_connected_subset(part):
            raise InvalidArgument(f"part {i} does not induce a connected subgraph")
    nxt = len(parts)
    for v in range(g.n):
        if new_of[v] < 0:
            new_of[v] = nxt
            nxt += 1
    edges = {(min(new_of[u], new_of[v]), max(new_of[u], new_of[v])) for u, v in g.edges if new_of[u] != new_of[v]}
    return Graph.from_edges(nxt, edges), new_of
