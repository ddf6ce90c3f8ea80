"""Randomized extraction of an apex-graph model from a large grid minor.

Given a graph of small radius around ``alpha`` that contains a
``(2kn+1) x (2ln+1)`` grid model, and a model of ``H = A - z`` in the
``k x l`` grid, build a model of ``A`` where the branch set of ``z`` is a
union of BFS-tree paths to ``alpha``. Grid blocks are ``n x n`` with
``n = 4(r-1)d + 1``; per-block random offsets pick which cross carries each
branch set, and a trial is rejected when a path from an anchor would run
through another branch set.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .certify import MinorModel, representing_edges, verify_minor_model
from .errors import ExtractionFailure, InvalidArgument, InvalidModel, PreconditionError
from .graph import CentrePaths, Graph, GridSpec, bfs_distances, centre_paths, contract_partition, make_grid
from .models import DoubledModel, crop_grid_model, double_model, shrink_grid_model_avoiding

log = logging.getLogger(__name__)


def apex_grid_threshold(r: int, t: int, d: int) -> int:
    """Side of a grid minor that no A-minor-free radius-r graph contains: ``16 r t d``."""
    if r < 1 or t < 2 or not 1 <= d <= t - 1:
        raise InvalidArgument(f"need r>=1, t>=2, 1<=d<=t-1; got r={r}, t={t}, d={d}")
    return 16 * r * t * d


def block_size(r: int, d: int) -> int:
    """``n = 4(r-1)d + 1``."""
    if r < 1 or d < 1:
        raise InvalidArgument(f"need r>=1 and d>=1, got r={r}, d={d}")
    return 4 * (r - 1) * d + 1


def apex_exact_threshold(k: int, l: int, r: int, d: int) -> tuple[int, int, int]:
    """``(2kn+1, 2ln+1, n)`` for an H-model in the ``k x l`` grid."""
    n = block_size(r, d)
    return 2 * k * n + 1, 2 * l * n + 1, n


def simple_threshold(t: int, r: int) -> int:
    """``(2t-2)^r``, exact."""
    if t < 2 or r < 0:
        raise InvalidArgument(f"need t>=2 and r>=0, got t={t}, r={r}")
    return (2 * t - 2) ** r


@dataclass(frozen=True)
class ApexInstance:
    """Apex graph ``a`` with apex vertex ``z``; ``h = a - z``.

    Vertex ``i`` of ``h`` is vertex ``h_to_a[i]`` of ``a``.
    """

    a: Graph
    z: int
    h: Graph
    h_to_a: tuple[int, ...]

    @classmethod
    def from_apex(cls, a: Graph, z: int) -> "ApexInstance":
        if not 0 <= z < a.n:
            raise InvalidArgument(f"apex vertex {z} not in graph")
        h, old = a.without(z)
        return cls(a, z, h, tuple(old))

    @property
    def d(self) -> int:
        return self.a.degree(self.z)

    @property
    def t(self) -> int:
        return self.a.n

    def neighbors_in_h(self) -> list[int]:
        a_to_h = {v: i for i, v in enumerate(self.h_to_a)}
        return sorted(a_to_h[v] for v in self.a.adj[self.z])


@dataclass(frozen=True)
class SubgridScheme:
    """The ``2k x 2l`` array of ``n x n`` blocks covering a ``2kn x 2ln`` grid."""

    k: int
    l: int
    n: int

    @property
    def grid(self) -> GridSpec:
        return GridSpec(2 * self.k * self.n, 2 * self.l * self.n)

    def _check(self, a, b, p, q):
        if not (1 <= a <= 2 * self.k and 1 <= b <= 2 * self.l and 1 <= p <= self.n and 1 <= q <= self.n):
            raise InvalidArgument(f"index (a={a}, b={b}, p={p}, q={q}) out of range")

    def coords(self, a: int, b: int, p: int, q: int) -> tuple[int, int]:
        self._check(a, b, p, q)
        return (a - 1) * self.n + p, (b - 1) * self.n + q

    def vertex(self, a: int, b: int, p: int, q: int) -> int:
        return self.grid.vertex(*self.coords(a, b, p, q))

    def blocks(self):
        for a in range(1, 2 * self.k + 1):
            for b in range(1, 2 * self.l + 1):
                yield a, b


def bars_and_cross(s: SubgridScheme, a: int, b: int, i: int) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Horizontal bar, vertical bar and cross at index ``i`` in block ``(a, b)``."""
    s._check(a, b, i, i)
    horiz = frozenset(s.vertex(a, b, p, i) for p in range(1, s.n + 1))
    vert = frozenset(s.vertex(a, b, i, p) for p in range(1, s.n + 1))
    return horiz, vert, horiz | vert


def _candidate_sets(s: SubgridScheme, dm: DoubledModel, offsets: dict[tuple[int, int], int]) -> dict[int, set[int]]:
    base = dm.model.host_grid
    owner = dm.model.owner_map()
    reps = {(min(x, y), max(x, y)) for x, y in dm.model.rep_edges.values()}
    sets: dict[int, set[int]] = {}
    for u, cells in dm.model.branch_sets.items():
        cu: set[int] = set()
        for c in cells:
            a, b = base.coords(c)
            cu |= bars_and_cross(s, a, b, offsets[a, b])[2]
            # horizontal edge (a,b)(a+1,b): same owner, or a representing edge of u
            if a < 2 * s.k:
                right = base.vertex(a + 1, b)
                if owner.get(right) == u or (c, right) in reps:
                    cu |= bars_and_cross(s, a, b, offsets[a + 1, b])[0]
            if b < 2 * s.l:
                up = base.vertex(a, b + 1)
                if owner.get(up) == u or (c, up) in reps:
                    cu |= bars_and_cross(s, a, b, offsets[a, b + 1])[1]
        sets[u] = cu
    return sets


def candidate_model(s: SubgridScheme, dm: DoubledModel, offsets: dict[tuple[int, int], int]) -> MinorModel:
    """Model of H in the ``2kn x 2ln`` grid assembled from crosses and bars."""
    missing = [blk for blk in s.blocks() if blk not in offsets]
    if missing:
        raise InvalidArgument(f"no offset for block {missing[0]}")
    if dm.model.host_grid != GridSpec(2 * s.k, 2 * s.l):
        raise InvalidArgument("doubled model does not live in the 2k x 2l grid of the scheme")
    host, grid = make_grid(s.grid.rows, s.grid.cols)
    sets = {u: frozenset(c) for u, c in _candidate_sets(s, dm, offsets).items()}
    reps, _ = representing_edges(host, dm.model.pattern, sets)
    return MinorModel(host, dm.model.pattern, sets, reps, host_grid=grid)


@dataclass(frozen=True)
class RiskPair:
    """Diagonal cell ``v`` of an anchor block and an internal vertex ``x`` of its centre path."""

    v: int
    x: int
    u: int
    block: tuple[int, int]
    i: int


def risk_pairs(s: SubgridScheme, dm: DoubledModel, cp: CentrePaths, nz) -> list[RiskPair]:
    """All risk pairs for the anchors of ``nz``.

    ``cp`` lives on the contracted graph whose first ``|grid|`` vertices are
    the cells of the scheme's grid (cell id == vertex id).
    """
    base = dm.model.host_grid
    out = []
    for u in sorted(nz):
        if u not in dm.anchors:
            raise InvalidArgument(f"no anchor for pattern vertex {u}")
        a, b = base.coords(dm.anchors[u])
        for i in range(1, s.n + 1):
            v = s.vertex(a, b, i, i)
            for x in cp.internal(v):
                out.append(RiskPair(v, x, u, (a, b), i))
    return out


def bad_pairs(pairs, offsets, sets: dict[int, set[int]]) -> list[RiskPair]:
    owner = {x: u for u, cu in sets.items() for x in cu}
    return [rp for rp in pairs
            if rp.i == offsets[rp.block] and owner.get(rp.x, rp.u) != rp.u]


@dataclass
class ApexExtraction:
    model: MinorModel
    trials: int
    offsets: dict[tuple[int, int], int]
    n: int
    radius: int
    risk_pair_count: int
    meta: dict = field(default_factory=dict)


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, trial])


class ApexExtractor:
    """Deterministic preprocessing plus one method per random trial."""

    def __init__(self, g: Graph, alpha: int, gm: MinorModel, inst: ApexInstance, hm: MinorModel,
                 radius: int | None = None):
        if not 0 <= alpha < g.n:
            raise InvalidArgument(f"centre {alpha} not in graph")
        if gm.host is not g and gm.host != g:
            raise InvalidArgument("grid model does not live in the given graph")
        if gm.pattern_grid is None:
            raise InvalidArgument("grid model pattern is not a grid")
        violations = verify_minor_model(gm)
        if violations:
            raise InvalidModel(f"grid model is invalid: {violations[0]}", violations)
        if hm.pattern != inst.h:
            raise InvalidArgument("H-model pattern differs from A - z")
        if hm.host_grid is None:
            raise InvalidArgument("H-model host must be a grid")
        self.g, self.alpha, self.inst = g, alpha, inst
        dist = bfs_distances(g, alpha)
        if min(dist) < 0:
            far = dist.index(-1)
            raise PreconditionError(f"vertex {far} is unreachable from {alpha}", witness=far)
        ecc = max(dist)
        if radius is None:
            radius = ecc
        elif ecc > radius:
            far = dist.index(ecc)
            raise PreconditionError(f"vertex {far} is at distance {ecc} > {radius} from {alpha}", witness=far)
        self.r = max(radius, 1)
        d = inst.d
        if d < 1:
            raise InvalidArgument("apex vertex has no neighbours")
        k, l = hm.host_grid.rows, hm.host_grid.cols
        need_rows, need_cols, n = apex_exact_threshold(k, l, self.r, d)
        gg = gm.pattern_grid
        if gg.rows < need_rows or gg.cols < need_cols:
            raise PreconditionError(
                f"grid model is {gg.rows}x{gg.cols}, need at least {need_rows}x{need_cols} (n={n})")
        self.scheme = SubgridScheme(k, l, n)
        shrunk = shrink_grid_model_avoiding(crop_grid_model(gm, need_rows, need_cols), alpha)
        self.grid_model = shrunk
        cells = self.scheme.grid
        assert shrunk.pattern_grid == cells
        parts = [shrunk.branch_sets[c] for c in range(cells.size)]
        self.gprime, self.to_gprime = contract_partition(g, parts)
        # preimage of every contracted vertex
        pre: list[list[int]] = [[] for _ in range(self.gprime.n)]
        for v, w in enumerate(self.to_gprime):
            pre[w].append(v)
        self.preimage = pre
        self.alpha_prime = self.to_gprime[alpha]
        self.paths = centre_paths(self.gprime, self.alpha_prime)
        self.dm = double_model(hm)
        self.nz = inst.neighbors_in_h()
        self.pairs = risk_pairs(self.scheme, self.dm, self.paths, self.nz)

    def sample_offsets(self, rng: np.random.Generator) -> dict[tuple[int, int], int]:
        blocks = list(self.scheme.blocks())
        draws = rng.integers(1, self.scheme.n + 1, size=len(blocks))
        return {blk: int(m) for blk, m in zip(blocks, draws)}

    def run_trial(self, offsets) -> tuple[MinorModel | None, list[RiskPair]]:
        """Candidate for one offset vector; ``None`` when some risk pair is bad."""
        sets = _candidate_sets(self.scheme, self.dm, offsets)
        bad = bad_pairs(self.pairs, offsets, sets)
        if bad:
            return None, bad
        return self._assemble(sets, offsets), []

    def _assemble(self, sets, offsets) -> MinorModel:
        s, base = self.scheme, self.dm.model.host_grid
        branch_prime = {u: set(cu) for u, cu in sets.items()}
        cz = {self.alpha_prime}
        for u in self.nz:
            a, b = base.coords(self.dm.anchors[u])
            m = offsets[a, b]
            path = self.paths.path(s.vertex(a, b, m, m))
            # attach after the last vertex of the path inside C_u
            last = max(i for i, x in enumerate(path) if x in sets[u])
            cz.update(path[last + 1:])
        inst = self.inst
        branch = {}
        for hu, cu in branch_prime.items():
            branch[inst.h_to_a[hu]] = frozenset(x for c in cu for x in self.preimage[c])
        branch[inst.z] = frozenset(x for c in cz for x in self.preimage[c])
        reps, _ = representing_edges(self.g, inst.a, branch)
        return MinorModel(self.g, inst.a, branch, reps)


def extract_apex(g: Graph, alpha: int, gm: MinorModel, inst: ApexInstance, hm: MinorModel,
                 seed: int, max_trials: int | None = None, radius: int | None = None) -> ApexExtraction:
    """Las Vegas extraction of an ``inst.a``-model in ``g``.

    Each trial draws fresh block offsets from a sub-seed derived from
    ``(seed, trial)``; the first trial with no bad risk pair is assembled,
    verified and returned. Raises :class:`ExtractionFailure` with code
    ``"trials-exhausted"`` after ``max_trials`` (default ``8n``) bad trials.
    """
    ex = ApexExtractor(g, alpha, gm, inst, hm, radius=radius)
    n = ex.scheme.n
    if max_trials is None:
        max_trials = 8 * n
    for trial in range(max_trials):
        offsets = ex.sample_offsets(_trial_rng(seed, trial))
        model, bad = ex.run_trial(offsets)
        if model is None:
            log.debug("trial %d: %d bad risk pairs", trial, len(bad))
            continue
        violations = verify_minor_model(model)
        if violations:
            raise InvalidModel(f"internal defect: extracted model fails verification: {violations[0]}",
                               violations)
        return ApexExtraction(model, trial + 1, offsets, n, ex.r, len(ex.pairs))
    raise ExtractionFailure("trials-exhausted", f"no good offsets in {max_trials} trials", max_trials)

