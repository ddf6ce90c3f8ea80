"""Minor models, tree-decompositions and their verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .graph import Graph, GridSpec


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True, eq=False)
class MinorModel:
    """Certificate that ``pattern`` is a minor of ``host``.

    ``branch_sets`` maps each pattern vertex to a set of host vertices and
    ``rep_edges`` maps each pattern edge ``(u, v)`` with ``u < v`` to a host
    edge ``(a, b)`` with ``a`` in the branch set of ``u`` and ``b`` in that of
    ``v``. ``host_grid``/``pattern_grid`` record grid coordinates when the
    host or the pattern is a grid.
    """

    host: Graph
    pattern: Graph
    branch_sets: Mapping[int, frozenset[int]]
    rep_edges: Mapping[tuple[int, int], tuple[int, int]]
    host_grid: GridSpec | None = None
    pattern_grid: GridSpec | None = None

    def owner_map(self) -> dict[int, int]:
        return {x: u for u, bs in self.branch_sets.items() for x in bs}

    def is_valid(self) -> bool:
        return not verify_minor_model(self)

    def same_certificate(self, other: "MinorModel") -> bool:
        return (self.host == other.host and self.pattern == other.pattern
                and dict(self.branch_sets) == dict(other.branch_sets)
                and dict(self.rep_edges) == dict(other.rep_edges))


def verify_minor_model(m: MinorModel) -> list[Violation]:
    """Check the three model axioms. An empty list means the model is valid."""
    out: list[Violation] = []
    host, pattern = m.host, m.pattern
    for u in range(pattern.n):
        if u not in m.branch_sets:
            out.append(Violation("missing", f"no branch set for pattern vertex {u}"))
    for u in m.branch_sets:
        if not 0 <= u < pattern.n:
            out.append(Violation("missing", f"branch set for unknown pattern vertex {u}"))
    owner: dict[int, int] = {}
    for u in sorted(m.branch_sets):
        bs = m.branch_sets[u]
        if not bs:
            out.append(Violation("connectivity", f"branch set {u} is empty"))
            continue
        bad = [x for x in bs if not 0 <= x < host.n]
        if bad:
            out.append(Violation("range", f"branch set {u} has host vertices out of range: {sorted(bad)[:5]}"))
            continue
        for x in bs:
            if x in owner:
                out.append(Violation("disjointness", f"branch sets {owner[x]} and {u} share host vertex {x}"))
            else:
                owner[x] = u
        if not host.is_connected_subset(bs):
            out.append(Violation("connectivity", f"branch set {u} does not induce a connected subgraph"))
    for u, v in pattern.edges:
        rep = m.rep_edges.get((u, v))
        if rep is None:
            rep = m.rep_edges.get((v, u))
            rep = rep[::-1] if rep is not None else None
        if rep is None:
            out.append(Violation("representation", f"pattern edge {u}-{v} has no representing edge"))
            continue
        a, b = rep
        if not (0 <= a < host.n and 0 <= b < host.n and host.has_edge(a, b)):
            out.append(Violation("representation", f"representing edge {a}-{b} of {u}-{v} is not a host edge"))
        elif a not in m.branch_sets.get(u, ()) or b not in m.branch_sets.get(v, ()):
            out.append(Violation("representation", f"edge {a}-{b} does not join branch sets {u} and {v}"))
    return out


def representing_edges(host: Graph, pattern: Graph,
                       branch_sets: Mapping[int, frozenset[int]]) -> tuple[dict, list]:
    """Pick, for each pattern edge, the lexicographically least host edge joining its branch sets.

    Returns ``(rep_edges, missing)`` where ``missing`` lists pattern edges
    with no joining host edge.
    """
    owner = {x: u for u, bs in branch_sets.items() for x in bs}
    wanted = set(pattern.edges)
    best: dict[tuple[int, int], tuple[int, int]] = {}
    for a in sorted(owner):
        ua = owner[a]
        for b in host.adj[a]:
            ub = owner.get(b)
            if ub is None or ub == ua:
                continue
            key = (min(ua, ub), max(ua, ub))
            if key not in wanted:
                continue
            cand = (a, b) if ua < ub else (b, a)
            if key not in best or cand < best[key]:
                best[key] = cand
    missing = sorted(wanted - best.keys())
    return best, missing


def build_model(host: Graph, pattern: Graph, branch_sets: Mapping[int, frozenset[int]], **grids) -> MinorModel:
    """Model with representing edges filled in by :func:`representing_edges`."""
    bs = {u: frozenset(s) for u, s in branch_sets.items()}
    reps, _ = representing_edges(host, pattern, bs)
    return MinorModel(host, pattern, bs, reps, **grids)


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed ``0..len(bags)-1`` with tree edges between bag indices."""

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]
    is_path: bool = field(default=False)

    @classmethod
    def path(cls, bags: Sequence) -> "TreeDecomposition":
        return cls(tuple(frozenset(b) for b in bags),
                   tuple((i, i + 1) for i in range(len(bags) - 1)), True)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def verify_decomposition(g: Graph, d: TreeDecomposition) -> tuple[list[Violation], int]:
    """Check vertex coverage, edge coverage and subtree connectivity.

    Returns ``(violations, width)``.
    """
    out: list[Violation] = []
    nb = len(d.bags)
    tree = Graph.from_edges(nb, d.tree_edges) if nb else Graph.empty(0)
    if nb == 0:
        out.append(Violation("tree", "decomposition has no bags"))
    elif tree.edge_count != nb - 1 or not tree.is_connected():
        out.append(Violation("tree", "bag tree is not a tree"))
    where: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(d.bags):
        for v in bag:
            if 0 <= v < g.n:
                where[v].append(i)
            else:
                out.append(Violation("range", f"bag {i} contains unknown vertex {v}"))
    for v in range(g.n):
        if not where[v]:
            out.append(Violation("vertex coverage", f"vertex {v} is in no bag"))
        elif not tree.is_connected_subset(where[v]):
            out.append(Violation("subtree", f"bags containing vertex {v} are not connected in the tree"))
    for u, v in g.edges:
        if not set(where[u]) & set(where[v]):
            out.append(Violation("edge coverage", f"edge {u}-{v} is in no bag"))
    return out, d.width
