"""Upper-threshold vs lower-construction sweeps, written as CSV."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable

from .constructions import lower_bound_graph, lower_bound_params_genus
from .errors import ExtractionFailure
from .k3t import extract_k3t, genus_grid_threshold, k3t_grid_threshold
from .models import identity_grid_model

COLUMNS = ("sweep", "r", "g", "t", "upper_threshold", "lower_grid_side", "achieved_t")


@dataclass(frozen=True)
class SweepConfig:
    kind: str = "genus"  # "genus" sweeps (r, g); "k3t" sweeps (r, t)
    r_values: tuple[int, ...] = (1, 2, 3)
    values: tuple[int, ...] = tuple(range(2, 11))
    extract: bool = False
    seed: int = 0


def achieved_t(r: int, k: int, seed: int) -> int | None:
    """K_{3,t} size extracted from the lower-bound graph; ``None`` when nothing is guaranteed."""
    g, grid, wit = lower_bound_graph(r, k)
    gm = identity_grid_model(g, grid)
    try:
        return extract_k3t(g, wit.apex, r, gm, seed).t
    except ExtractionFailure as exc:
        if exc.code == "guarantee-zero":
            return None
        raise


def _row(kind, r, g, t, upper, k, side, cfg):
    got = achieved_t(r, k, cfg.seed) if cfg.extract and k >= 1 else None
    return {"sweep": kind, "r": r, "g": g, "t": t if t is not None else "", "upper_threshold": upper,
            "lower_grid_side": side, "achieved_t": "" if got is None else got}


def sweep(cfg: SweepConfig) -> list[dict]:
    rows = []
    for r in cfg.r_values:
        for v in cfg.values:
            if cfg.kind == "genus":
                k, side = lower_bound_params_genus(v, r)
                rows.append(_row("genus", r, v, None, genus_grid_threshold(v, r), k, side, cfg))
            elif cfg.kind == "k3t":
                # a genus-g graph excludes K_{3,2g+3}, so the largest usable genus is (t-3)//2
                g = (v - 3) // 2
                k, side = lower_bound_params_genus(g, r) if g >= 2 else (0, 0)
                rows.append(_row("k3t", r, g if g >= 2 else "", v, k3t_grid_threshold(v, r), k, side, cfg))
            else:
                raise ValueError(f"unknown sweep kind {cfg.kind!r}")
    return rows


def emit_report(results: Iterable[dict], out=None) -> str:
    """CSV text of the rows; also written to ``out`` (path) when given."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in results:
        writer.writerow(row)
    text = buf.getvalue()
    if out is not None:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    return text
