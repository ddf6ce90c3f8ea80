"""Command-line entry point.

Exit codes: 0 success, 2 precondition or validation failure (JSON error object
on stderr), 3 randomized search exhausted its trials, 64 unknown command.
Every command that writes ``--out`` also writes ``<out>.manifest.json``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import io as fio
from .apex import ApexInstance, apex_grid_threshold, extract_apex, simple_threshold
from .certify import MinorModel, verify_decomposition, verify_minor_model
from .constructions import apex_lb_params, check_witness, lower_bound_graph, lower_bound_params_genus
from .decomposition import layered_path_decomposition
from .errors import ExtractionFailure, InvalidArgument, InvalidModel, MinorToolkitError, PreconditionError
from .graph import Graph, complete_graph, make_grid
from .k3t import extract_k3t, genus_grid_threshold, genus_to_k3t, k3t_grid_threshold, k3t_guarantee
from .models import contract_subgrids, double_model, identity_grid_model, k2t_model
from .oracles import exact_treewidth, minor_test, planarity_test
from .report import SweepConfig, emit_report, sweep

EXIT_OK, EXIT_INVALID, EXIT_EXHAUSTED, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class CommandFailed(Exception):
    """Validation failure carrying a JSON-ready payload."""

    def __init__(self, kind: str, message: str, **extra):
        super().__init__(message)
        self.payload = {"error": kind, "message": message, **extra}


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


class Run:
    """Collects manifest fields while a command executes."""

    def __init__(self, command: str, args: argparse.Namespace):
        self.command = command
        self.flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
        self.inputs: dict[str, str] = {}
        self.outputs: list[str] = []
        self.stdout: list[str] = []

    def input(self, path) -> Path:
        path = Path(path)
        try:
            self.inputs[str(path)] = hashlib.sha256(path.read_bytes()).hexdigest()
        except OSError as exc:
            raise CommandFailed("io", f"cannot read {path}: {exc.strerror}") from exc
        return path

    def write(self, path, text: str) -> None:
        Path(path).write_text(text)
        self.outputs.append(str(path))

    def print(self, text) -> None:
        print(text)
        self.stdout.append(str(text))


def _host_ref(graph_path: Path, out: Path) -> str:
    return os.path.relpath(graph_path.resolve(), out.resolve().parent)


def _load_graph(run: Run, path):
    try:
        return fio.read_graph(run.input(path))
    except InvalidArgument as exc:
        raise CommandFailed("format", f"{path}: {exc}") from exc


def _load_model(run: Run, path, host: Graph | None = None) -> tuple[MinorModel, dict]:
    try:
        return fio.read_model(run.input(path), host)
    except (KeyError, ValueError, OSError) as exc:
        raise CommandFailed("format", f"{path}: malformed model ({exc})") from exc


def _write_verified_model(run: Run, out, model: MinorModel, host_ref=None, anchors=None, meta=None) -> None:
    """Serialize, then re-read the bytes and verify them before reporting success."""
    text = fio.dumps(fio.model_to_obj(model, host_ref, anchors, meta))
    check = fio.model_from_obj(json.loads(text), host=model.host)
    violations = verify_minor_model(check)
    if violations:
        raise InvalidModel(f"self-check failed for {out}: {violations[0]}", violations)
    run.write(out, text)


def _centre(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise InvalidArgument(f"vertex {v} not in graph with {g.n} vertices")
    return v


# --- commands ---------------------------------------------------------------

APEX_PATTERNS = ("none", "dominant", "even-sum", "both-even", "even-rows")


def cmd_gen_grid(run: Run, a) -> None:
    g, spec = make_grid(a.rows, a.cols)
    if a.apex != "none":
        keep = {
            "dominant": lambda x, y: True,
            "even-sum": lambda x, y: (x + y) % 2 == 0,
            "both-even": lambda x, y: x % 2 == 0 and y % 2 == 0,
            "even-rows": lambda x, y: x % 2 == 0,
        }[a.apex]
        g = g.add_vertex(spec.vertex(x, y) for x, y in spec.cells() if keep(x, y))
    run.write(a.out, fio.format_graph(g, spec))
    if a.model:
        _write_verified_model(run, a.model, identity_grid_model(g, spec), _host_ref(Path(a.out), Path(a.model)))


def cmd_gen_lower_bound(run: Run, a) -> None:
    g, grid, wit = lower_bound_graph(a.r, a.k)
    checks = check_witness(g, wit, planarity_test)
    if not all(checks.values()):
        raise InvalidModel(f"witness checks failed: {sorted(k for k, ok in checks.items() if not ok)}")
    run.write(a.out, fio.format_graph(g, grid))
    if a.witness:
        obj = {"r": wit.r, "k": wit.k, "apex": wit.apex, "w": list(wit.w_set),
               "grid": [grid.rows, grid.cols], "diagonal_edges": [list(e) for e in wit.diagonal_edges],
               "gadget": wit.gadget, "checks": checks}
        run.write(a.witness, fio.dumps(obj))
    if a.model:
        _write_verified_model(run, a.model, identity_grid_model(g, grid), _host_ref(Path(a.out), Path(a.model)))


def cmd_double_model(run: Run, a) -> None:
    m, _ = _load_model(run, a.model)
    dm = double_model(m)
    _write_verified_model(run, a.out, dm.model, anchors=dm.anchors)


def cmd_k2t_model(run: Run, a) -> None:
    _write_verified_model(run, a.out, k2t_model(a.t))


def cmd_contract_subgrids(run: Run, a) -> None:
    m, obj = _load_model(run, a.model)
    out = contract_subgrids(m, a.p)
    ref = obj["host"] if isinstance(obj["host"], str) else None
    if ref is not None:
        ref = _host_ref(Path(a.model).parent / ref, Path(a.out))
    _write_verified_model(run, a.out, out, ref)


def cmd_extract_apex(run: Run, a) -> None:
    g, _ = _load_graph(run, a.graph)
    alpha = _centre(g, a.centre)
    gm, _ = _load_model(run, a.grid_model, host=g)
    apex_graph, _ = _load_graph(run, a.apex)
    inst = ApexInstance.from_apex(apex_graph, a.apex_vertex)
    hm, _ = _load_model(run, a.h_model)
    res = extract_apex(g, alpha, gm, inst, hm, a.seed, max_trials=a.max_trials, radius=a.radius)
    meta = {"seed": a.seed, "trials": res.trials, "n": res.n, "radius": res.radius,
            "risk_pairs": res.risk_pair_count}
    _write_verified_model(run, a.out, res.model, _host_ref(Path(a.graph), Path(a.out)), meta=meta)
    run.print(json.dumps({"trials": res.trials, "n": res.n}, sort_keys=True))


def cmd_extract_k3t(run: Run, a) -> None:
    g, _ = _load_graph(run, a.graph)
    alpha = _centre(g, a.centre)
    gm, _ = _load_model(run, a.grid_model, host=g)
    res = extract_k3t(g, alpha, a.radius, gm, a.seed, max_trials=a.max_trials)
    meta = {"seed": a.seed, "t": res.t, "guarantee": res.guarantee, "attempts": res.attempts,
            "columns": list(res.columns.columns), "row": res.sets.row}
    _write_verified_model(run, a.out, res.model, _host_ref(Path(a.graph), Path(a.out)), meta=meta)
    run.print(json.dumps({"t": res.t, "guarantee": res.guarantee}, sort_keys=True))


def cmd_decompose_ttw(run: Run, a) -> None:
    g, _ = _load_graph(run, a.graph)
    dec = layered_path_decomposition(g, _centre(g, a.root))
    violations, _ = verify_decomposition(g, dec.base)
    if violations:
        raise InvalidModel(f"self-check failed: {violations[0]}", violations)
    meta = {"root": a.root, "eccentricity": dec.layering.eccentricity}
    if a.bag_tw:
        tws = [exact_treewidth(g.induced(bag)[0]) for bag in dec.base.bags]
        meta |= {"bag_treewidth": tws, "ttw_upper": max(tws)}
        run.print(max(tws))
    run.write(a.out, fio.dumps(fio.decomposition_to_obj(dec.base, meta)))


def _fail_on(violations, what: str) -> None:
    if violations:
        raise CommandFailed("invalid", f"{what} fails verification: {violations[0]}",
                            violations=[{"kind": v.kind, "message": v.message} for v in violations])


def cmd_verify_model(run: Run, a) -> None:
    g, _ = _load_graph(run, a.graph)
    m, _ = _load_model(run, a.model, host=g)
    _fail_on(verify_minor_model(m), "model")
    run.print("ok")


def cmd_verify_td(run: Run, a) -> None:
    g, _ = _load_graph(run, a.graph)
    try:
        dec = fio.decomposition_from_obj(json.loads(run.input(a.decomp).read_text()))
    except (KeyError, TypeError, ValueError) as exc:
        raise CommandFailed("format", f"{a.decomp}: malformed decomposition ({exc})") from exc
    violations, width = verify_decomposition(g, dec)
    _fail_on(violations, "decomposition")
    run.print(f"ok width={width}")


def _need(a, *names):
    missing = [n for n in names if getattr(a, n) is None]
    if missing:
        raise CommandFailed("usage", f"threshold {a.which} needs --{' --'.join(missing)}")


def cmd_threshold(run: Run, a) -> None:
    w = a.which
    if w == "apex":
        _need(a, "r", "t", "d")
        value = apex_grid_threshold(a.r, a.t, a.d)
    elif w == "simple":
        _need(a, "t", "r")
        value = simple_threshold(a.t, a.r)
    elif w == "k3t":
        _need(a, "t", "r")
        value = k3t_grid_threshold(a.t, a.r)
    elif w == "genus":
        _need(a, "g", "r")
        value = genus_grid_threshold(a.g, a.r)
    elif w == "genus-t":
        _need(a, "g")
        value = genus_to_k3t(a.g)
    elif w == "lb-genus":
        _need(a, "g", "r")
        value = lower_bound_params_genus(a.g, a.r)[1]
    elif w == "apex-lb":
        _need(a, "t", "r")
        value = apex_lb_params(a.t, a.r)[1]
    else:  # guarantee
        _need(a, "n", "m", "r")
        value = k3t_guarantee(a.n, a.m, a.r)[1]
    run.print(value)


def cmd_oracle(run: Run, a) -> None:
    g, _ = _load_graph(run, a.graph)
    if a.which == "tw":
        tw, dec = exact_treewidth(g, with_decomposition=True)
        run.print(tw)
        if a.out:
            run.write(a.out, fio.dumps(fio.decomposition_to_obj(dec, {"treewidth": tw})))
    elif a.which == "planar":
        run.print("planar" if planarity_test(g) else "non-planar")
    else:
        if a.pattern is not None:
            h, _ = _load_graph(run, a.pattern)
        elif a.complete is not None:
            h = complete_graph(a.complete)
        else:
            raise CommandFailed("usage", "oracle minor needs --pattern or --complete")
        model = minor_test(g, h)
        if model is None:
            run.print("not-minor")
            return
        run.print("minor")
        if a.out:
            _write_verified_model(run, a.out, model, _host_ref(Path(a.graph), Path(a.out)))


def cmd_report(run: Run, a) -> None:
    cfg = SweepConfig(kind=a.kind, r_values=tuple(a.r), values=tuple(a.values), extract=a.extract, seed=a.seed)
    text = emit_report(sweep(cfg))
    if a.out:
        run.write(a.out, text)
    else:
        sys.stdout.write(text)


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="apexminor", description="Certified grid-minor extraction toolkit.")
    p.add_argument("--manifest", help="manifest path for commands without --out")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("gen-grid", cmd_gen_grid, "write a grid, optionally with an apex")
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("--apex", choices=APEX_PATTERNS, default="none")
    sp.add_argument("--out", required=True)
    sp.add_argument("--model", help="also write the identity grid model here")

    sp = add("gen-lower-bound", cmd_gen_lower_bound, "write the lower-bound graph and its witness")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--witness")
    sp.add_argument("--model", help="also write the identity grid model here")

    sp = add("double-model", cmd_double_model, "model in the doubled grid")
    sp.add_argument("--model", required=True)
    sp.add_argument("--out", required=True)

    sp = add("k2t-model", cmd_k2t_model, "K_{2,t} model in a grid")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--out", required=True)

    sp = add("contract-subgrids", cmd_contract_subgrids, "merge p x p blocks of a grid model")
    sp.add_argument("--model", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--out", required=True)

    sp = add("extract-apex", cmd_extract_apex, "randomized apex-graph model extraction")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--centre", type=int, required=True)
    sp.add_argument("--grid-model", required=True)
    sp.add_argument("--apex", required=True, help="apex pattern graph file")
    sp.add_argument("--apex-vertex", type=int, required=True)
    sp.add_argument("--h-model", required=True)
    sp.add_argument("--seed", type=_seed, required=True)
    sp.add_argument("--max-trials", type=int)
    sp.add_argument("--radius", type=int)
    sp.add_argument("--out", required=True)

    sp = add("extract-k3t", cmd_extract_k3t, "randomized K_{3,t} model extraction")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--centre", type=int, required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--grid-model", required=True)
    sp.add_argument("--seed", type=_seed, required=True)
    sp.add_argument("--max-trials", type=int, default=64)
    sp.add_argument("--out", required=True)

    sp = add("decompose-ttw", cmd_decompose_ttw, "BFS-layered path decomposition")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--root", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--bag-tw", action="store_true", help="compute exact treewidth of every bag")

    sp = add("verify-model", cmd_verify_model, "check a minor model")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--model", required=True)

    sp = add("verify-td", cmd_verify_td, "check a tree decomposition")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--decomp", required=True)

    sp = add("threshold", cmd_threshold, "closed-form thresholds")
    sp.add_argument("which", choices=("apex", "simple", "k3t", "genus", "genus-t", "lb-genus", "apex-lb",
                                      "guarantee"))
    for flag in ("r", "t", "d", "g", "n", "m"):
        sp.add_argument(f"--{flag}", type=int)

    sp = add("oracle", cmd_oracle, "small-instance exact oracles")
    sp.add_argument("which", choices=("tw", "minor", "planar"))
    sp.add_argument("--graph", required=True)
    sp.add_argument("--pattern")
    sp.add_argument("--complete", type=int, help="use K_n as the pattern")
    sp.add_argument("--out")

    sp = add("report", cmd_report, "CSV sweep of upper thresholds vs lower constructions")
    sp.add_argument("--kind", choices=("genus", "k3t"), default="genus")
    sp.add_argument("--r", type=int, nargs="*", default=[1, 2, 3])
    sp.add_argument("--values", type=int, nargs="*", default=list(range(2, 11)))
    sp.add_argument("--extract", action="store_true")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--out")
    return p


COMMANDS = ("gen-grid", "gen-lower-bound", "double-model", "k2t-model", "contract-subgrids", "extract-apex",
            "extract-k3t", "decompose-ttw", "verify-model", "verify-td", "threshold", "oracle", "report")


def _error(payload: dict) -> None:
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


def _payload(exc: Exception) -> tuple[int, dict]:
    if isinstance(exc, CommandFailed):
        return EXIT_INVALID, exc.payload
    if isinstance(exc, ExtractionFailure):
        code = EXIT_EXHAUSTED if exc.code == "trials-exhausted" else EXIT_INVALID
        return code, {"error": exc.code, "message": str(exc), "trials": exc.trials}
    if isinstance(exc, PreconditionError):
        return EXIT_INVALID, {"error": "precondition", "message": str(exc), "witness": exc.witness}
    if isinstance(exc, InvalidModel):
        return EXIT_INVALID, {"error": "invalid", "message": str(exc),
                              "violations": [{"kind": v.kind, "message": v.message} for v in exc.violations]}
    return EXIT_INVALID, {"error": type(exc).__name__, "message": str(exc)}


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    rest = list(argv)
    if rest[:1] == ["--manifest"]:
        rest = rest[2:]
    positional = [x for x in rest[:1] if not x.startswith("-")]
    if not argv or argv[0] in ("-h", "--help"):
        parser.print_help(sys.stdout if argv else sys.stderr)
        return EXIT_OK if argv else EXIT_USAGE
    if not positional or positional[0] not in COMMANDS:
        sys.stderr.write(parser.format_usage())
        _error({"error": "unknown-command", "message": f"unknown command {positional[:1]}"})
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _error({"error": "usage", "message": str(exc)})
        return EXIT_INVALID
    except SystemExit as exc:  # --help on a subcommand
        return int(exc.code or 0)

    run = Run(args.command, args)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        args.func(run, args)
    except (MinorToolkitError, CommandFailed) as exc:
        code, payload = _payload(exc)
        _error(payload)
    manifest_path = getattr(args, "out", None)
    manifest_path = f"{manifest_path}.manifest.json" if manifest_path else args.manifest
    if manifest_path:
        manifest = {"command": run.command, "flags": run.flags, "seed": getattr(args, "seed", None),
                    "inputs": run.inputs, "outputs": run.outputs, "stdout": run.stdout,
                    "wall_clock_s": round(time.perf_counter() - start, 6), "outcome": code}
        Path(manifest_path).write_text(fio.dumps(manifest))
    return code


def main(argv: list[str] | None = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else list(argv))
