"""Small-instance ground truth: exact treewidth, minor containment, planarity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import networkx as nx

from .certify import MinorModel, TreeDecomposition, build_model
from .errors import OracleLimitError
from .graph import Graph


@dataclass(frozen=True)
class OracleLimits:
    max_tw_vertices: int = 18
    max_minor_pattern: int = 6
    max_minor_host: int = 64

    def __post_init__(self):
        if min(self.max_tw_vertices, self.max_minor_pattern, self.max_minor_host) < 1:
            raise ValueError("oracle limits must be positive")


DEFAULT_LIMITS = OracleLimits()


# --- treewidth -------------------------------------------------------------

def _bitadj(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def _q_size(adj: list[int], s: int, v: int) -> int:
    """|Q(S, v)|: vertices outside S+v reachable from v through S."""
    comp = 1 << v
    frontier = comp
    inner = s
    while frontier:
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nb & inner & ~comp
        comp |= frontier
    reach = 0
    c = comp
    while c:
        low = c & -c
        reach |= adj[low.bit_length() - 1]
        c ^= low
    return bin(reach & ~s & ~(1 << v)).count("1")


def _elimination_width(g: Graph, order: list[int]) -> int:
    adj = [set(a) for a in g.adj]
    width = 0
    for v in order:
        nb = adj[v]
        width = max(width, len(nb))
        for a in nb:
            adj[a] |= nb
            adj[a].discard(a)
            adj[a].discard(v)
        adj[v] = set()
    return width


def _min_fill_order(g: Graph) -> list[int]:
    adj = [set(a) for a in g.adj]
    alive = set(range(g.n))
    order = []
    while alive:
        def fill(v):
            nb = list(adj[v])
            return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])
        v = min(alive, key=lambda x: (fill(x), len(adj[x]), x))
        order.append(v)
        nb = adj[v]
        for a in nb:
            adj[a] |= nb
            adj[a].discard(a)
            adj[a].discard(v)
        alive.discard(v)
        adj[v] = set()
    return order


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree-decomposition induced by an elimination ordering."""
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in g.adj]
    bags = []
    later_nbrs = []
    for v in order:
        nb = {w for w in adj[v] if pos[w] > pos[v]}
        later_nbrs.append(nb)
        bags.append(frozenset(nb | {v}))
        for a in nb:
            adj[a] |= nb
            adj[a].discard(a)
    edges = []
    roots = []
    for i, nb in enumerate(later_nbrs):
        if nb:
            edges.append((i, min(pos[w] for w in nb)))
        else:
            roots.append(i)
    # one root per component; chain them to get a single tree
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(tuple(bags), tuple(edges))


def _strip_low_degree(g: Graph) -> tuple[list[int], int]:
    """Repeatedly eliminate vertices of degree at most one.

    Returns the eliminated vertices in order and the width they cost (0 or
    1). Neither step creates fill edges, so treewidth is the maximum of that
    cost and the treewidth of what remains.
    """
    deg = [len(a) for a in g.adj]
    gone = [False] * g.n
    stack = [v for v in range(g.n) if deg[v] <= 1]
    order, cost = [], 0
    while stack:
        v = stack.pop()
        if gone[v]:
            continue
        gone[v] = True
        order.append(v)
        cost = max(cost, deg[v])
        for w in g.adj[v]:
            if not gone[w]:
                deg[w] -= 1
                if deg[w] <= 1:
                    stack.append(w)
    return order, cost


def _components(g: Graph, vertices: set[int]) -> list[list[int]]:
    comps, seen = [], set()
    for v in sorted(vertices):
        if v in seen:
            continue
        comp, stack = [v], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in vertices and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def exact_treewidth(g: Graph, limits: OracleLimits = DEFAULT_LIMITS, with_decomposition: bool = False):
    """Exact treewidth.

    Vertices of degree at most one are eliminated first; what remains is
    split into components and each is solved by dynamic programming over
    vertex subsets. ``limits.max_tw_vertices`` bounds the size of a
    component that reaches the subset DP. With ``with_decomposition=True``
    returns ``(tw, TreeDecomposition)``.
    """
    if g.n == 0:
        return (-1, decomposition_from_order(g, [])) if with_decomposition else -1
    order, tw = _strip_low_degree(g)
    core = set(range(g.n)) - set(order)
    for comp in _components(g, core):
        if len(comp) > limits.max_tw_vertices:
            raise OracleLimitError(
                f"treewidth oracle limited to {limits.max_tw_vertices} vertices per reduced component, "
                f"got {len(comp)}")
        sub, old = g.induced(comp)
        width, sub_order = _component_treewidth(sub)
        tw = max(tw, width)
        order.extend(old[v] for v in sub_order)
    if not with_decomposition:
        return tw
    td = decomposition_from_order(g, order)
    assert td.width == tw, (td.width, tw)
    return tw, td


def _component_treewidth(g: Graph) -> tuple[int, list[int]]:
    """Subset DP on a graph; returns the width and an optimal elimination order.

    States are sets ``S`` eliminated first; the value of ``S`` is the best
    maximum ``|Q(S', v)|`` seen while eliminating it. States whose value
    reaches the min-fill upper bound are pruned.
    """
    n = g.n
    best_order = _min_fill_order(g)
    ub = _elimination_width(g, best_order)
    adj = _bitadj(g)
    full = (1 << n) - 1
    # state -> (value, predecessor state, vertex added)
    layer: dict[int, tuple[int, int, int]] = {0: (-1, -1, -1)}
    history = [layer]

    def order_of(s: int) -> list[int]:
        order = []
        depth = bin(s).count("1")
        while depth > 0:
            _, prev, v = history[depth][s]
            order.append(v)
            s = prev
            depth -= 1
        order.reverse()
        return order

    for size in range(n):
        nxt: dict[int, tuple[int, int, int]] = {}
        for s, (val, _, _) in layer.items():
            # eliminating the remaining vertices in any order costs at most n-|S|-1
            tail = max(val, n - size - 1)
            if tail < ub:
                ub = tail
                done = order_of(s)
                best_order = done + sorted(set(range(n)) - set(done))
            rest = full & ~s
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                r = max(val, _q_size(adj, s, v))
                if r >= ub:
                    continue
                t = s | low
                cur = nxt.get(t)
                if cur is None or r < cur[0]:
                    nxt[t] = (r, s, v)
        if not nxt:
            break
        layer = nxt
        history.append(layer)
    return ub, best_order


# --- minor containment -----------------------------------------------------

def connected_subsets(g: Graph, allowed: set[int], max_size: int) -> Iterator[frozenset[int]]:
    """Every connected vertex subset of ``allowed`` with at most ``max_size`` vertices, once each."""
    for root in sorted(allowed):
        pool = {w for w in allowed if w > root}
        yield from _grow(g, pool, {root}, [w for w in sorted(g.adj[root]) if w in pool], {root}, max_size)


def _grow(g, pool, current, candidates, seen, max_size):
    yield frozenset(current)
    if len(current) >= max_size:
        return
    for i, w in enumerate(candidates):
        new_seen = seen | set(candidates[: i + 1])
        extra = [y for y in sorted(g.adj[w]) if y in pool and y not in new_seen and y not in candidates]
        current.add(w)
        yield from _grow(g, pool, current, candidates[i + 1:] + extra, new_seen | set(extra), max_size)
        current.discard(w)


def _subsets_by_size(g: Graph, allowed: set[int], max_size: int) -> Iterator[frozenset[int]]:
    for size in range(1, max_size + 1):
        hit = False
        for bs in connected_subsets(g, allowed, size):
            if len(bs) == size:
                hit = True
                yield bs
        if not hit:
            return


def _pattern_order(h: Graph) -> list[int]:
    """Degree-descending order in which each vertex (after the first of its component) touches an earlier one."""
    left = set(range(h.n))
    order: list[int] = []
    while left:
        placed = set(order)
        touching = [v for v in left if h.adj[v] & placed]
        pool = touching or list(left)
        v = max(pool, key=lambda x: (len(h.adj[x]), -x))
        order.append(v)
        left.discard(v)
    return order


def is_planar(g: Graph) -> bool:
    return planarity_test(g)


def minor_test(g: Graph, h: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> MinorModel | None:
    """Search for an ``h``-model in ``g``; ``None`` means ``h`` is not a minor.

    Exhaustive backtracking over connected branch sets. Pattern vertices go
    in degree-descending order and each branch set must already touch the
    branch sets of its placed neighbours. Sound shortcuts: vertex/edge
    counts, and a planar host cannot contain a non-planar pattern.
    """
    if h.n > limits.max_minor_pattern:
        raise OracleLimitError(f"pattern has {h.n} vertices, limit {limits.max_minor_pattern}")
    if g.n > limits.max_minor_host:
        raise OracleLimitError(f"host has {g.n} vertices, limit {limits.max_minor_host}")
    if h.n > g.n or h.edge_count > g.edge_count:
        return None
    if h.n == 0:
        return MinorModel(g, h, {}, {})
    if planarity_test(g) and not planarity_test(h):
        return None
    order = _pattern_order(h)
    hdeg = [len(h.adj[u]) for u in range(h.n)]
    assigned: dict[int, frozenset[int]] = {}
    used: set[int] = set()

    def touches(bs: frozenset[int], other: frozenset[int]) -> bool:
        return any(g.adj[x] & other for x in bs)

    def room_for_rest(idx: int) -> bool:
        """Every unplaced vertex needs a free component touching all its placed neighbours."""
        comps: list[frozenset[int]] = []
        seen: set[int] = set()
        for v in range(g.n):
            if v in used or v in seen:
                continue
            comp, stack = {v}, [v]
            while stack:
                x = stack.pop()
                for y in g.adj[x]:
                    if y not in used and y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        for w in order[idx:]:
            need = [assigned[x] for x in h.adj[w] if x in assigned]
            if not any(all(touches(c, b) for b in need) for c in comps):
                return False
        return True

    def rec(idx: int) -> bool:
        if idx == len(order):
            return True
        u = order[idx]
        free = set(range(g.n)) - used
        remaining = len(order) - idx - 1
        placed_nbrs = [assigned[w] for w in h.adj[u] if w in assigned]
        unplaced = hdeg[u] - len(placed_nbrs)
        for bs in _subsets_by_size(g, free, len(free) - remaining):
            if not all(touches(bs, o) for o in placed_nbrs):
                continue
            # each unplaced neighbour needs its own free vertex next to bs
            if unplaced and len(set().union(*(g.adj[x] for x in bs)) - bs - used) < unplaced:
                continue
            assigned[u] = bs
            used.update(bs)
            if room_for_rest(idx + 1) and rec(idx + 1):
                return True
            used.difference_update(bs)
            del assigned[u]
        return False

    if not rec(0):
        return None
    return build_model(g, h, assigned)


# --- planarity -------------------------------------------------------------

def planarity_test(g: Graph) -> bool:
    """True iff ``g`` is planar (left-right criterion via networkx)."""
    if g.n >= 3 and g.edge_count > 3 * g.n - 6:
        return False
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges)
    planar, _ = nx.check_planarity(ng)
    return planar
