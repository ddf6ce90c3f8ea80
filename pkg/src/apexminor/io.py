"""Text and JSON formats for graphs, models, decompositions and witnesses.

Graph files::

    grid <rows> <cols>      (optional; grid cells are vertices 0..rows*cols-1)
    p <n> <m>
    e <u> <v>               (m lines, 0-based ids)

Lines starting with ``c`` are comments. JSON output uses sorted keys so equal
certificates serialize to identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .certify import MinorModel, TreeDecomposition
from .errors import InvalidArgument
from .graph import Graph, GridSpec, make_grid
from .models import DoubledModel


def format_graph(g: Graph, grid: GridSpec | None = None) -> str:
    lines = []
    if grid is not None:
        lines.append(f"grid {grid.rows} {grid.cols}")
    lines.append(f"p {g.n} {g.edge_count}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> tuple[Graph, GridSpec | None]:
    n = m = None
    grid = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "grid":
                grid = GridSpec(int(parts[1]), int(parts[2]))
            elif parts[0] == "p":
                n, m = int(parts[1]), int(parts[2])
            elif parts[0] == "e":
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise InvalidArgument(f"line {lineno}: unknown record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise InvalidArgument(f"line {lineno}: malformed record {raw!r}") from exc
    if n is None:
        raise InvalidArgument("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise InvalidArgument(f"header declares {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges)
    if g.edge_count != m:
        raise InvalidArgument("duplicate edges in graph file")
    if grid is not None and grid.size > n:
        raise InvalidArgument(f"grid {grid.rows}x{grid.cols} does not fit in {n} vertices")
    return g, grid


def read_graph(path) -> tuple[Graph, GridSpec | None]:
    return parse_graph(Path(path).read_text())


def write_graph(path, g: Graph, grid: GridSpec | None = None) -> None:
    Path(path).write_text(format_graph(g, grid))


def _graph_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def _pattern_obj(g: Graph, grid: GridSpec | None) -> dict:
    if grid is not None:
        return {"grid": [grid.rows, grid.cols]}
    return _graph_obj(g)


def _load_graph_obj(obj, base_dir: Path | None) -> tuple[Graph, GridSpec | None]:
    if isinstance(obj, str):
        path = Path(obj)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return read_graph(path)
    if "grid" in obj:
        rows, cols = obj["grid"]
        return make_grid(rows, cols)
    return Graph.from_edges(obj["n"], [tuple(e) for e in obj["edges"]]), None


def model_to_obj(m: MinorModel, host_ref: str | None = None, anchors: dict | None = None,
                 meta: dict | None = None) -> dict:
    obj = {
        "host": host_ref if host_ref is not None else _pattern_obj(m.host, m.host_grid),
        "pattern": _pattern_obj(m.pattern, m.pattern_grid),
        "branch_sets": {str(u): sorted(bs) for u, bs in sorted(m.branch_sets.items())},
        "rep_edges": {f"{u}-{v}": list(e) for (u, v), e in sorted(m.rep_edges.items())},
    }
    if host_ref is not None and m.host_grid is not None:
        obj["host_grid"] = [m.host_grid.rows, m.host_grid.cols]
    if anchors is not None:
        obj["anchors"] = {str(u): a for u, a in sorted(anchors.items())}
    if meta:
        obj["meta"] = meta
    return obj


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def write_model(path, m: MinorModel, host_ref: str | None = None, anchors: dict | None = None,
                meta: dict | None = None) -> None:
    Path(path).write_text(dumps(model_to_obj(m, host_ref, anchors, meta)))


def model_from_obj(obj: dict, host: Graph | None = None, base_dir: Path | None = None) -> MinorModel:
    """Rebuild a model. ``host`` overrides the file's host reference."""
    host_grid = None
    if host is None:
        host, host_grid = _load_graph_obj(obj["host"], base_dir)
    if "host_grid" in obj:
        host_grid = GridSpec(*obj["host_grid"])
    elif isinstance(obj.get("host"), dict) and "grid" in obj["host"]:
        host_grid = GridSpec(*obj["host"]["grid"])
    pattern, pattern_grid = _load_graph_obj(obj["pattern"], base_dir)
    try:
        bs = {int(u): frozenset(int(x) for x in xs) for u, xs in obj["branch_sets"].items()}
        reps = {}
        for key, e in obj.get("rep_edges", {}).items():
            u, v = (int(x) for x in key.split("-"))
            reps[(u, v)] = (int(e[0]), int(e[1]))
    except (ValueError, TypeError, AttributeError) as exc:
        raise InvalidArgument(f"malformed model file: {exc}") from exc
    return MinorModel(host, pattern, bs, reps, host_grid=host_grid, pattern_grid=pattern_grid)


def read_model(path, host: Graph | None = None) -> tuple[MinorModel, dict]:
    """Returns the model and the raw JSON object (for anchors/meta)."""
    path = Path(path)
    obj = json.loads(path.read_text())
    return model_from_obj(obj, host, path.parent), obj


def doubled_to_obj(dm: DoubledModel) -> dict:
    return model_to_obj(dm.model, anchors=dm.anchors)


def decomposition_to_obj(d: TreeDecomposition, meta: dict | None = None) -> dict:
    obj = {"bags": [sorted(b) for b in d.bags], "tree_edges": [list(e) for e in d.tree_edges],
           "path": d.is_path}
    if meta:
        obj["meta"] = meta
    return obj


def decomposition_from_obj(obj: dict) -> TreeDecomposition:
    bags = tuple(frozenset(b) for b in obj["bags"])
    edges = tuple(tuple(e) for e in obj["tree_edges"])
    return TreeDecomposition(bags, edges, bool(obj.get("path", False)))
