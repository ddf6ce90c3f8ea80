"""Transformations of grid models: doubling, K_{2,t} layouts, contraction, shrinking."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .certify import MinorModel, build_model, verify_minor_model
from .errors import InvalidArgument, InvalidModel, PreconditionError
from .graph import Graph, GridSpec, complete_bipartite, make_grid


def _require_valid(m: MinorModel, what: str = "input model") -> None:
    violations = verify_minor_model(m)
    if violations:
        raise InvalidModel(f"{what} is invalid: {violations[0]}", violations)


def _require_grid_pattern(m: MinorModel) -> GridSpec:
    if m.pattern_grid is None:
        raise InvalidArgument("model pattern is not a grid")
    return m.pattern_grid


def identity_grid_model(host: Graph, spec: GridSpec, cells: dict[tuple[int, int], int] | None = None) -> MinorModel:
    """Grid model whose branch sets are single host vertices.

    ``cells`` maps grid coordinates to host vertices; by default cell ids are
    host ids (the host contains the grid on its first ``rows*cols`` vertices).
    """
    pattern, _ = make_grid(spec.rows, spec.cols)
    if cells is None:
        bs = {v: frozenset([v]) for v in range(spec.size)}
    else:
        bs = {spec.vertex(x, y): frozenset([h]) for (x, y), h in cells.items()}
    return build_model(host, pattern, bs, pattern_grid=spec)


@dataclass(frozen=True)
class DoubledModel:
    """Model in the doubled grid plus one anchor cell per pattern vertex.

    Anchors have two odd coordinates and touch no representing edge.
    """

    model: MinorModel
    anchors: dict[int, int]


def double_model(m: MinorModel) -> DoubledModel:
    """Blow each grid cell up into a 2x2 block of the ``2k x 2l`` grid."""
    grid = m.host_grid
    if grid is None:
        raise InvalidArgument("host of the model is not a grid")
    _require_valid(m)
    big_host, big = make_grid(2 * grid.rows, 2 * grid.cols)
    branch = {}
    anchors = {}
    for u, cells in m.branch_sets.items():
        coords = sorted(grid.coords(c) for c in cells)
        block = set()
        for x, y in coords:
            block.update(big.vertex(px, py) for px in (2 * x - 1, 2 * x) for py in (2 * y - 1, 2 * y))
        branch[u] = frozenset(block)
        x, y = coords[0]
        anchors[u] = big.vertex(2 * x - 1, 2 * y - 1)
    reps = {}
    for (u, v), (a, b) in m.rep_edges.items():
        (xa, ya), (xb, yb) = grid.coords(a), grid.coords(b)
        lo, hi = ((xa, ya), (xb, yb)) if (xa, ya) < (xb, yb) else ((xb, yb), (xa, ya))
        x, y = lo
        if hi == (x + 1, y):
            e = (big.vertex(2 * x, 2 * y), big.vertex(2 * x + 1, 2 * y))
        else:
            e = (big.vertex(2 * x, 2 * y), big.vertex(2 * x, 2 * y + 1))
        # keep orientation: first endpoint in the branch set of u
        if e[0] not in branch[u]:
            e = (e[1], e[0])
        reps[(u, v)] = e
    out = MinorModel(big_host, m.pattern, branch, reps, host_grid=big, pattern_grid=m.pattern_grid)
    return DoubledModel(out, anchors)


def k2t_model(t: int) -> MinorModel:
    """Explicit model of K_{2,t} in a ``3s x (s+2)`` grid, ``s = ceil(sqrt(t))``.

    Pattern vertices 0 and 1 are the two hubs, ``2..t+1`` the other side.
    Hub 0 is column 1 plus the rows congruent to 1 mod 3 (columns ``1..C-1``);
    hub 1 is column ``C`` plus the rows divisible by 3 (columns ``2..C``);
    each other vertex is a single cell on a row congruent to 2 mod 3.
    """
    if t < 1:
        raise InvalidArgument(f"t must be positive, got {t}")
    s = isqrt(t - 1) + 1
    rows, cols = 3 * s, s + 2
    host, grid = make_grid(rows, cols)
    hub0 = {grid.vertex(x, 1) for x in range(1, rows + 1)}
    hub0 |= {grid.vertex(x, y) for x in range(1, rows + 1, 3) for y in range(1, cols)}
    hub1 = {grid.vertex(x, cols) for x in range(1, rows + 1)}
    hub1 |= {grid.vertex(x, y) for x in range(3, rows + 1, 3) for y in range(2, cols + 1)}
    centres = [grid.vertex(x, y) for x in range(2, rows + 1, 3) for y in range(2, cols)][:t]
    bs = {0: frozenset(hub0), 1: frozenset(hub1)}
    for i, c in enumerate(centres):
        bs[2 + i] = frozenset([c])
    return build_model(host, complete_bipartite(2, t), bs, host_grid=grid)


def contract_subgrids(m: MinorModel, p: int) -> MinorModel:
    """Merge every ``p x p`` block of a grid model into one cell."""
    grid = _require_grid_pattern(m)
    if p < 1 or grid.rows % p or grid.cols % p:
        raise InvalidArgument(f"block size {p} does not divide {grid.rows}x{grid.cols}")
    _require_valid(m)
    if p == 1:
        return m
    small_pattern, small = make_grid(grid.rows // p, grid.cols // p)
    bs = {}
    for i, j in small.cells():
        cells = set()
        for x in range(p * (i - 1) + 1, p * i + 1):
            for y in range(p * (j - 1) + 1, p * j + 1):
                cells |= m.branch_sets[grid.vertex(x, y)]
        bs[small.vertex(i, j)] = frozenset(cells)
    return build_model(m.host, small_pattern, bs, host_grid=m.host_grid, pattern_grid=small)


def crop_grid_model(m: MinorModel, rows: int, cols: int) -> MinorModel:
    """Restrict a grid model to its top-left ``rows x cols`` cells."""
    grid = _require_grid_pattern(m)
    if not (1 <= rows <= grid.rows and 1 <= cols <= grid.cols):
        raise InvalidArgument(f"cannot crop {grid.rows}x{grid.cols} to {rows}x{cols}")
    if (rows, cols) == (grid.rows, grid.cols):
        return m
    pattern, small = make_grid(rows, cols)
    bs = {small.vertex(x, y): m.branch_sets[grid.vertex(x, y)] for x, y in small.cells()}
    return build_model(m.host, pattern, bs, host_grid=m.host_grid, pattern_grid=small)


def shrink_grid_model_avoiding(m: MinorModel, v: int) -> MinorModel:
    """Drop one row and one column so that no branch set contains ``v``.

    If ``v`` lies in cell ``(i, j)``, row ``i`` and column ``j`` are deleted.
    To keep the cells on either side of a deleted line adjacent, each deleted
    cell of row ``i`` is merged into the cell above it and each deleted cell
    of column ``j`` into the cell to its left (nothing to bridge when ``i`` or
    ``j`` is 1). Cell ``(i, j)`` itself is discarded. If ``v`` is in no branch
    set the last row and column are dropped.
    """
    grid = _require_grid_pattern(m)
    if grid.rows < 2 or grid.cols < 2:
        raise PreconditionError(f"cannot shrink a {grid.rows}x{grid.cols} grid model")
    _require_valid(m)
    owner = m.owner_map()
    if v not in owner:
        return crop_grid_model(m, grid.rows - 1, grid.cols - 1)
    i, j = grid.coords(owner[v])
    pattern, small = make_grid(grid.rows - 1, grid.cols - 1)
    merged: dict[tuple[int, int], set[int]] = {}
    for x, y in grid.cells():
        if (x, y) == (i, j):
            continue
        tx, ty = x, y
        if x == i:
            if i == 1:
                continue
            tx = i - 1
        elif y == j:
            if j == 1:
                continue
            ty = j - 1
        merged.setdefault((tx, ty), set()).update(m.branch_sets[grid.vertex(x, y)])
    bs = {}
    for (x, y), cells in merged.items():
        nx_ = x if x < i else x - 1
        ny_ = y if y < j else y - 1
        bs[small.vertex(nx_, ny_)] = frozenset(cells)
    out = build_model(m.host, pattern, bs, host_grid=m.host_grid, pattern_grid=small)
    _require_valid(out, "shrunken model")
    return out
