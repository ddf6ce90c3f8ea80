import hypothesis
from hypothesis import strategies as st

from apexminor.certify import build_model
from apexminor.graph import Graph, complete_graph, make_grid

hypothesis.settings.register_profile("ci", deadline=None, max_examples=60)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=500)
hypothesis.settings.load_profile("ci")


@st.composite
def connected_graphs(draw, min_n=1, max_n=12, max_extra=None):
    """Random spanning tree plus random chords."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if pairs:
        limit = len(pairs) if max_extra is None else max_extra
        edges |= set(draw(st.lists(st.sampled_from(pairs), max_size=limit)))
    return Graph.from_edges(n, edges)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def grid_models(draw, max_side=6):
    """A valid minor model whose host is a grid of side at most ``max_side``.

    Cells are split into connected regions by random growth; some regions are
    dropped and the pattern keeps a random subset of region adjacencies.
    """
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    host, spec = make_grid(rows, cols)
    owner = [-1] * spec.size
    seeds = draw(st.lists(st.integers(0, spec.size - 1), min_size=1, max_size=spec.size, unique=True))
    frontier = []
    for i, s in enumerate(seeds):
        owner[s] = i
        frontier.append(s)
    while frontier:
        idx = draw(st.integers(0, len(frontier) - 1))
        v = frontier[idx]
        free = sorted(w for w in host.adj[v] if owner[w] < 0)
        if not free:
            frontier.pop(idx)
            continue
        w = draw(st.sampled_from(free))
        owner[w] = owner[v]
        frontier.append(w)
    regions = {}
    for v, o in enumerate(owner):
        regions.setdefault(o, set()).add(v)
    keep = [o for o in sorted(regions) if draw(st.booleans()) or o == 0]
    index = {o: i for i, o in enumerate(keep)}
    adjacent = sorted({(index[owner[u]], index[owner[v]]) for u, v in host.edges
                       if owner[u] != owner[v] and owner[u] in index and owner[v] in index})
    adjacent = sorted({(min(e), max(e)) for e in adjacent})
    chosen = [e for e in adjacent if draw(st.booleans())]
    pattern = Graph.from_edges(len(keep), chosen)
    bs = {index[o]: frozenset(regions[o]) for o in keep}
    return build_model(host, pattern, bs, host_grid=spec)


def dominant_grid(side: int) -> tuple[Graph, object, int]:
    """``side x side`` grid plus a vertex adjacent to every cell."""
    g, spec = make_grid(side, side)
    return g.add_vertex(range(spec.size)), spec, spec.size


def grid_with_apex(rows: int, cols: int, keep) -> tuple[Graph, object, int]:
    g, spec = make_grid(rows, cols)
    return g.add_vertex(spec.vertex(x, y) for x, y in spec.cells() if keep(x, y)), spec, spec.size


def k4_apex_fixture():
    """K_4 with apex 3 over H = K_3 drawn in the 2x2 grid."""
    from apexminor.apex import ApexInstance

    inst = ApexInstance.from_apex(complete_graph(4), 3)
    host, spec = make_grid(2, 2)
    hm = build_model(host, inst.h, {0: frozenset({0, 1}), 1: frozenset({2}), 2: frozenset({3})}, host_grid=spec)
    return inst, hm


def random_grid_model(rng, max_side=6):
    """Same construction as :func:`grid_models`, driven by a numpy generator."""
    rows, cols = (int(v) for v in rng.integers(1, max_side + 1, size=2))
    host, spec = make_grid(rows, cols)
    nseeds = int(rng.integers(1, spec.size + 1))
    seeds = [int(s) for s in rng.choice(spec.size, size=nseeds, replace=False)]
    owner = [-1] * spec.size
    for i, s in enumerate(seeds):
        owner[s] = i
    frontier = list(seeds)
    while frontier:
        idx = int(rng.integers(len(frontier)))
        free = sorted(w for w in host.adj[frontier[idx]] if owner[w] < 0)
        if not free:
            frontier.pop(idx)
            continue
        w = free[int(rng.integers(len(free)))]
        owner[w] = owner[frontier[idx]]
        frontier.append(w)
    keep = [o for o in range(nseeds) if o == 0 or rng.random() < 0.7]
    index = {o: i for i, o in enumerate(keep)}
    adjacent = sorted({(min(index[owner[u]], index[owner[v]]), max(index[owner[u]], index[owner[v]]))
                       for u, v in host.edges
                       if owner[u] != owner[v] and owner[u] in index and owner[v] in index})
    chosen = [e for e in adjacent if rng.random() < 0.6]
    bs = {index[o]: frozenset(v for v in range(spec.size) if owner[v] == o) for o in keep}
    return build_model(host, Graph.from_edges(len(keep), chosen), bs, host_grid=spec)


# --- acceptance reporting ---------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None or report.when not in ("setup", "call"):
        return
    if report.when == "setup" and report.passed:
        return
    number, title = crit
    outcome = "PASS" if report.passed else "FAIL"
    ACCEPTANCE[number] = (outcome, title)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        outcome, title = ACCEPTANCE[number]
        terminalreporter.write_line(f"{outcome} criterion {number:2d}: {title}")
