"""Randomized K_{3,t} extraction from a grid minor avoiding a centre, plus thresholds.

The grid ``J`` has cells ``(i, j)`` with column index ``i`` in ``1..n`` and
row index ``j`` in ``1..m``. Random columns split into alternating families
``X`` and ``Y``; row vertices between consecutive chosen columns become the
singleton side of K_{3,t}, joined to ``X``, ``Y`` and a tree of centre paths.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, isqrt
from typing import Mapping

import numpy as np

from .certify import MinorModel, representing_edges, verify_minor_model
from .errors import ExtractionFailure, InvalidArgument, InvalidModel, PreconditionError
from .graph import Graph, centre_paths, complete_bipartite, contract_partition

log = logging.getLogger(__name__)


def k3t_guarantee(n: int, m: int, r: int) -> tuple[Fraction, int]:
    """``(n-4r+2)(m-4r+2) / (8r(2r-1))`` and the integer size it guarantees.

    The guarantee is 0 unless both factors are positive (equivalently
    ``n, m > 2(2r-1)``); otherwise it is the ceiling of the fraction.
    """
    if n < 1 or m < 1 or r < 1:
        raise InvalidArgument(f"need n, m, r >= 1; got n={n}, m={m}, r={r}")
    a, b = n - 4 * r + 2, m - 4 * r + 2
    value = Fraction(a * b, 8 * r * (2 * r - 1))
    if a <= 0 or b <= 0:
        return value, 0
    return value, ceil(value)


def _ceil_sqrt(x: int) -> int:
    c = isqrt(x)
    return c if c * c == x else c + 1


def k3t_grid_threshold(t: int, r: int) -> int:
    """``ceil(4r(1 + sqrt(t-1)))`` in exact integer arithmetic."""
    if t < 1 or r < 1:
        raise InvalidArgument(f"need t>=1 and r>=1; got t={t}, r={r}")
    return 4 * r + _ceil_sqrt(16 * r * r * (t - 1))


def genus_to_k3t(g: int) -> int:
    """Euler genus ``g`` graphs exclude K_{3,2g+3}."""
    if g < 0:
        raise InvalidArgument(f"genus must be non-negative, got {g}")
    return 2 * g + 3


def genus_grid_threshold(g: int, r: int) -> int:
    """``ceil(4r(1 + sqrt(2g+2)))``."""
    if g < 0 or r < 1:
        raise InvalidArgument(f"need g>=0 and r>=1; got g={g}, r={r}")
    return 4 * r + _ceil_sqrt(16 * r * r * (2 * g + 2))


def greedy_independent_set(q: Mapping[int, set[int] | frozenset[int] | list[int]], cap: int) -> set[int]:
    """Independent set of the underlying undirected graph by minimum-degree greedy.

    ``q`` maps every vertex to its out-neighbours. Every out-degree must be at
    most ``cap``; the result then has at least ``|V| / (2 cap + 1)`` vertices.
    """
    und: dict[int, set[int]] = {v: set() for v in q}
    for v, outs in q.items():
        outs = set(outs) - {v}
        if len(outs) > cap:
            raise InvalidArgument(f"vertex {v} has out-degree {len(outs)} > {cap}")
        for w in outs:
            if w not in und:
                raise InvalidArgument(f"arc {v}->{w} leaves the vertex set")
            und[v].add(w)
            und[w].add(v)
    heap = [(len(nb), v) for v, nb in und.items()]
    heapq.heapify(heap)
    alive = set(und)
    chosen = set()
    while heap:
        deg, v = heapq.heappop(heap)
        if v not in alive or deg != len(und[v]):
            continue
        chosen.add(v)
        gone = {v} | und[v]
        alive -= gone
        touched = set()
        for x in gone:
            for y in und[x]:
                if y in alive:
                    und[y].discard(x)
                    touched.add(y)
            und[x] = set()
        for y in touched:
            heapq.heappush(heap, (len(und[y]), y))
    return chosen


@dataclass(frozen=True)
class ColumnSelection:
    p: int
    columns: tuple[int, ...]

    @property
    def x_columns(self) -> frozenset[int]:
        return frozenset(c for i, c in enumerate(self.columns, 1) if i % 2 == 1)

    @property
    def y_columns(self) -> frozenset[int]:
        return frozenset(c for i, c in enumerate(self.columns, 1) if i % 2 == 0)


@dataclass
class SurvivorSets:
    base: list[int]
    survivors: list[int]
    independent: list[int]
    final: list[int]
    row: int


@dataclass
class K3tExtraction:
    model: MinorModel
    t: int
    guarantee: int
    attempts: int
    columns: ColumnSelection
    sets: SurvivorSets
    meta: dict = field(default_factory=dict)


def _rng(seed: int, attempt: int) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, attempt])


def extract_k3t(g: Graph, alpha: int, r: int, gm: MinorModel, seed: int,
                max_trials: int = 64) -> K3tExtraction:
    """Model of K_{3,t} in ``g`` with ``t`` at least :func:`k3t_guarantee`.

    ``gm`` is an ``n x m`` grid model in ``g - alpha``. The hypothesis used
    is that every base row vertex ``(2ir, j)`` is within distance ``r`` of
    ``alpha`` after contracting the grid branch sets; this holds whenever
    ``alpha`` has eccentricity at most ``r``, and a violating vertex is
    reported as the witness.
    """
    if r < 1:
        raise InvalidArgument(f"radius must be positive, got {r}")
    if not 0 <= alpha < g.n:
        raise InvalidArgument(f"centre {alpha} not in graph")
    if gm.pattern_grid is None:
        raise InvalidArgument("grid model pattern is not a grid")
    violations = verify_minor_model(gm)
    if violations:
        raise InvalidModel(f"grid model is invalid: {violations[0]}", violations)
    if any(alpha in bs for bs in gm.branch_sets.values()):
        raise PreconditionError("grid model must avoid the centre; shrink it first", witness=alpha)
    grid = gm.pattern_grid
    n, m = grid.rows, grid.cols
    _, guarantee = k3t_guarantee(n, m, r)
    s = 2 * r - 1
    if guarantee == 0 or n <= 2 * s or m <= 2 * s:
        raise ExtractionFailure("guarantee-zero", f"{n}x{m} grid with r={r} guarantees nothing")
    p = (n - 2 * r + 1) // (2 * r)

    gp, to_gp = contract_partition(g, [gm.branch_sets[c] for c in range(grid.size)])
    pre: list[list[int]] = [[] for _ in range(gp.n)]
    for v, w in enumerate(to_gp):
        pre[w].append(v)
    a0 = to_gp[alpha]
    paths = centre_paths(gp, a0)

    base = [grid.vertex(2 * i * r, j) for i in range(1, p + 1) for j in range(s + 1, m - s + 1)]
    for x in base:
        if paths.distance[x] > r:
            raise PreconditionError(
                f"grid cell {grid.coords(x)} is at distance {paths.distance[x]} > {r} from the centre",
                witness=min(pre[x]))
    internal = {x: paths.internal(x) for x in base}
    ncells = grid.size

    def column(v: int) -> int:
        return grid.coords(v)[0] if v < ncells else 0

    def row(v: int) -> int:
        return grid.coords(v)[1] if v < ncells else 0

    for attempt in range(max_trials):
        rng = _rng(seed, attempt)
        cols = tuple(int(rng.integers(2 * (i - 1) * r + 1, 2 * i * r)) for i in range(1, p + 2))
        chosen = set(cols)
        survivors = [x for x in base if not any(column(y) in chosen for y in internal[x])]
        if 2 * len(survivors) > len(base):
            break
        log.debug("attempt %d: %d/%d survivors", attempt, len(survivors), len(base))
    else:
        raise ExtractionFailure("trials-exhausted",
                                f"no column choice kept half the base set in {max_trials} attempts", max_trials)
    sel = ColumnSelection(p, cols)

    # Z_x: the row segment strictly between the chosen columns around x
    zpath: dict[int, list[int]] = {}
    zowner: dict[int, int] = {}
    for x in survivors:
        cx, jx = grid.coords(x)
        i = cx // (2 * r)
        seg = [grid.vertex(c, jx) for c in range(cols[i - 1] + 1, cols[i])]
        zpath[x] = seg
        for c in seg:
            zowner[c] = x

    conflict = {x: {zowner[y] for y in internal[x] if zowner.get(y, x) != x} for x in survivors}
    independent = sorted(greedy_independent_set(conflict, r - 1))
    for x in independent:
        for y in independent:
            if x != y:
                assert not set(internal[x]) & set(zpath[y]), (x, y)

    def hits_rows(x, j):
        return any(row(y) in (j, m - j + 1) for y in internal[x])

    counts = [sum(1 for x in independent if hits_rows(x, j)) for j in range(1, s + 1)]
    q = 1 + counts.index(min(counts))
    final = [x for x in independent if not hits_rows(x, q)]
    sets = SurvivorSets(base, survivors, independent, final, q)

    xs, ys = sel.x_columns, sel.y_columns
    x_side = {grid.vertex(c, j) for c in xs for j in range(1, m - s + 1)}
    x_side |= {grid.vertex(i, q) for i in range(1, n + 1)}
    y_side = {grid.vertex(c, j) for c in ys for j in range(s + 1, m + 1)}
    y_side |= {grid.vertex(i, m - q + 1) for i in range(1, n + 1)}
    hub = {a0}
    for x in final:
        path = paths.path(x)
        last = max(k for k, y in enumerate(path) if y in set(zpath[x]))
        hub.update(path[last + 1:])

    t = len(final)
    pattern = complete_bipartite(3, t)
    prime_sets = [x_side, y_side, hub] + [set(zpath[x]) for x in final]
    branch = {u: frozenset(v for c in cs for v in pre[c]) for u, cs in enumerate(prime_sets)}
    reps, _ = representing_edges(g, pattern, branch)
    model = MinorModel(g, pattern, branch, reps)
    violations = verify_minor_model(model)
    if violations:
        raise InvalidModel(f"internal defect: K_{{3,{t}}} model fails verification: {violations[0]}", violations)
    if t < guarantee:
        raise InvalidModel(f"internal defect: extracted t={t} below guarantee {guarantee}")
    return K3tExtraction(model, t, guarantee, attempt + 1, sel, sets)
