"""Command-line experiments over edge-list graph files.

Subcommands: fairness (one-graph report), sweep (simulation grid),
baseline-convergence (generator spread study), scatter (degree vs inverse
influencer distance), kl (triadic concentration per sampled node).  All
delimited output is deterministic for fixed flags: comma separated, dot
decimal point, a header row, and leading '#' lines echoing every parameter
that shaped the rows (the output path and worker count are omitted, so
reruns compare byte for byte).  Flags override values from an optional JSON
config file given with --config; config keys use underscores (for example
"k_percent").
"""

from __future__ import annotations

import argparse
import json
import sys
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .centrality import InfluencerSet, top_influencers
from .fairness import (
    CONNECTED,
    baseline_fairness,
    fairness_index,
    convergence_study,
    graph_fairness,
    node_fairness,
)
from .generators import matched_attachment
from .graph import Graph, load_edge_list, multi_source_distances
from .simulation import SimulationConfig, kl_distance, simulate

RESULT_HEADER = ("dataset", "variant", "a", "b", "p", "seed", "visit", "metric", "value")
CONVERGENCE_HEADER = ("model", "edge_count", "mean", "std", "seeds")
SCATTER_HEADER = ("node", "degree", "inv_distance")
KL_HEADER = ("node", "kl")

DEFAULT_VARIANTS = (
    ("completely random", 0.0, 0.0),
    ("degree", 1.0, 0.0),
    ("D/d", 1.0, 1.0),
    ("sqrt(D/d)", 0.5, 0.5),
    ("1/d^2", 0.0, 2.0),
    ("(D/d)^2", 2.0, 2.0),
    ("D/d^2", 1.0, 2.0),
)

DEFAULT_P_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


def variant_label(a: float, b: float) -> str:
    for label, va, vb in DEFAULT_VARIANTS:
        if va == a and vb == b:
            return label
    return f"D^{_fmt(a)}/d^{_fmt(b)}"


def _fmt(value) -> str:
    """Stable cell text: shortest round-trip form for floats, str otherwise."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    if isinstance(value, (np.floating,)):
        return repr(float(value))
    return str(value)


def _write_csv(stream, header, rows, provenance) -> None:
    for line in provenance:
        stream.write(f"# {line}\n")
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(c) for c in row) + "\n")


_EXECUTION_KEYS = {"output", "workers"}  # these never shape the data rows


def _provenance(command: str, params: dict) -> list[str]:
    lines = [f"generator=fairnet {command}"]
    for key in sorted(params):
        if key in _EXECUTION_KEYS:
            continue
        val = params[key]
        if key == "ab_pairs" and val is not None:
            val = ",".join(f"{_fmt(a)}:{_fmt(b)}" for a, b in val)
        elif isinstance(val, (list, tuple)):
            val = ",".join(_fmt(v) for v in val)
        lines.append(f"{key}={_fmt(val)}")
    return lines


def _open_output(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


def _load_graph(path: str) -> Graph:
    with open(path, "r") as fh:
        return load_edge_list(fh)


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in str(text).split(",") if tok.strip() != ""]


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in str(text).split(",") if tok.strip() != ""]


def _parse_pairs(text: str) -> list[tuple[float, float]]:
    """Exponent pairs in a:b[,a:b...] form."""
    pairs = []
    for tok in str(text).split(","):
        tok = tok.strip()
        if not tok:
            continue
        parts = tok.split(":")
        if len(parts) != 2:
            raise ValueError(f"expected a:b pair, got {tok!r}")
        pairs.append((float(parts[0]), float(parts[1])))
    if not pairs:
        raise ValueError("no exponent pairs given")
    return pairs


def _influencer_set(g: Graph, params: dict) -> InfluencerSet:
    spec = params.get("influencers")
    if spec:
        labels = [tok for tok in str(spec).split(",") if tok.strip() != ""]
        ids = sorted(g.node_id(lab) for lab in labels)
        if len(set(ids)) != len(ids):
            raise ValueError("influencer labels repeat")
        return InfluencerSet(tuple(ids))
    return top_influencers(g, params["k_percent"])


def _influencer_note(s: InfluencerSet) -> str:
    if s.k_percent is None:
        return f"{len(s)} (given by hand)"
    return f"{len(s)} (top {_fmt(s.k_percent)}% by betweenness)"


# ---------------------------------------------------------------------------
# parameter plumbing


def _merge_params(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults, then config-file values, then explicit flags."""
    params = dict(defaults)
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path) as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a JSON object")
        for key, val in loaded.items():
            if key not in defaults:
                raise ValueError(f"config key {key!r} is not a parameter of this command")
            params[key] = val
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    return params


_COERCERS = {
    "k_percent": float,
    "t_percent": float,
    "seed": int,
    "baseline_seeds": int,
    "n_visits": int,
    "checkpoint_every": int,
    "workers": int,
    "sample": int,
    "n_nodes": int,
    "seeds_per_point": int,
    "p_values": lambda v: [float(x) for x in v] if isinstance(v, (list, tuple)) else _parse_float_list(v),
    "seeds": lambda v: [int(x) for x in v] if isinstance(v, (list, tuple)) else _parse_int_list(v),
    "edge_counts": lambda v: [int(x) for x in v] if isinstance(v, (list, tuple)) else _parse_int_list(v),
    "ab_pairs": lambda v: [(float(a), float(b)) for a, b in v]
    if isinstance(v, (list, tuple))
    else _parse_pairs(v),
}


def _coerce(params: dict) -> dict:
    out = dict(params)
    for key, fn in _COERCERS.items():
        if key in out and out[key] is not None:
            out[key] = fn(out[key])
    return out


# ---------------------------------------------------------------------------
# fairness


def cmd_fairness(params: dict) -> int:
    g = _load_graph(params["graph"])
    s = _influencer_set(g, params)
    report = graph_fairness(g, s, params["t_percent"])
    out = []
    out.append(f"nodes: {g.node_count}")
    out.append(f"edges: {g.edge_count}")
    out.append(f"influencers: {_influencer_note(s)}")
    out.append(f"mode: {report.mode}")
    rows = []
    dataset = params["graph"]
    if report.mode == CONNECTED:
        base = baseline_fairness(
            g.node_count,
            g.edge_count,
            params["baseline"],
            params["k_percent"],
            params["t_percent"],
            range(params["baseline_seeds"]),
        )
        index = fairness_index(report, base)
        out.append(f"graph_fairness: {_fmt(report.graph_fairness)} (top {_fmt(report.t_percent)}% of distances)")
        out.append(f"baseline_mean: {_fmt(base.mean)} ({base.model}, {len(base.per_seed)} seeds)")
        out.append(f"fairness_index: {_fmt(index)}")
        for metric, value in (
            ("graph_fairness", report.graph_fairness),
            ("baseline_mean", base.mean),
            ("fairness_index", index),
        ):
            rows.append((dataset, "observed", "", "", "", "", "", metric, value))
    else:
        out.append(f"unreachable_fraction: {_fmt(report.unreachable_fraction)}")
        rows.append(
            (dataset, "observed", "", "", "", "", "", "unreachable_fraction", report.unreachable_fraction)
        )
    print("\n".join(out))
    if params.get("output"):
        stream, close = _open_output(params["output"])
        try:
            _write_csv(stream, RESULT_HEADER, rows, _provenance("fairness", params))
        finally:
            if close:
                stream.close()
    return 0


# ---------------------------------------------------------------------------
# sweep


def _run_cell(payload):
    g, influencers, label, a, b, p, seed, params = payload
    cfg = SimulationConfig(
        n_visits=params["n_visits"],
        triadic_prob=p,
        degree_exponent=a,
        distance_exponent=b,
        t_percent=params["t_percent"],
        seed=seed,
        checkpoint_every=params["checkpoint_every"],
    )
    return simulate(g, influencers, cfg)


def _baseline_for(cache: dict, params: dict, node_count: int, edge_count: int):
    model = params["baseline"]
    if model == "ba":
        key = (model, node_count, matched_attachment(node_count, edge_count))
    else:
        key = (model, node_count, edge_count)
    if key not in cache:
        cache[key] = baseline_fairness(
            node_count,
            edge_count,
            model,
            params["k_percent"],
            params["t_percent"],
            range(params["baseline_seeds"]),
        )
    return cache[key]


def _cell_rows(dataset, g, label, a, b, p, seed, trace, disconnected, params, cache):
    rows = []
    event_visits = [e.visit for e in trace.added_edges]
    n_visits = params["n_visits"]
    final_base = None
    for visit, report in trace.checkpoints:
        if disconnected:
            rows.append(
                (dataset, label, a, b, p, seed, visit, "unreachable_fraction", report.unreachable_fraction)
            )
        else:
            edges_here = g.edge_count + bisect_left(event_visits, visit)
            base = _baseline_for(cache, params, g.node_count, edges_here)
            rows.append(
                (dataset, label, a, b, p, seed, visit, "fairness_index", fairness_index(report, base))
            )
            if visit == n_visits:
                final_base = base
    if disconnected:
        last = trace.checkpoints[-1][1] if trace.checkpoints else None
        value = last.unreachable_fraction if last is not None else ""
        rows.append((dataset, label, a, b, p, seed, n_visits, "unreachable_fraction", value))
    else:
        if final_base is None:
            final_base = _baseline_for(
                cache, params, g.node_count, g.edge_count + len(trace.added_edges)
            )
        rows.append((dataset, label, a, b, p, seed, n_visits, "baseline_mean", final_base.mean))
    return rows


def cmd_sweep(params: dict) -> int:
    g = _load_graph(params["graph"])
    influencers = _influencer_set(g, params)
    start = node_fairness(g, influencers)
    disconnected = any(d is None for d in start.values())
    pairs = params["ab_pairs"]
    cells = [
        (variant_label(a, b), a, b, p, seed)
        for (a, b) in pairs
        for p in params["p_values"]
        for seed in params["seeds"]
    ]
    payloads = [(g, influencers, label, a, b, p, seed, params) for (label, a, b, p, seed) in cells]
    workers = params["workers"]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            traces = list(pool.map(_run_cell, payloads))
    else:
        traces = [_run_cell(pl) for pl in payloads]

    dataset = params["graph"]
    cache: dict = {}
    rows = []
    failed = None
    for (label, a, b, p, seed), trace in zip(cells, traces):
        try:
            rows.extend(
                _cell_rows(dataset, g, label, a, b, p, seed, trace, disconnected, params, cache)
            )
        except Exception as exc:  # partial output plus a marker row
            rows.append((dataset, label, a, b, p, seed, "", "aborted", ""))
            failed = exc
            break
    stream, close = _open_output(params["output"])
    try:
        _write_csv(stream, RESULT_HEADER, rows, _provenance("sweep", params))
    finally:
        if close:
            stream.close()
    if failed is not None:
        print(f"sweep aborted: {failed}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# baseline-convergence


def cmd_baseline_convergence(params: dict) -> int:
    rows = convergence_study(
        params["n_nodes"],
        params["edge_counts"],
        params["seeds_per_point"],
        params["k_percent"],
        params["t_percent"],
    )
    table = [
        (r["model"], r["edge_count"], r["mean"], r["std"], r["seeds"]) for r in rows
    ]
    stream, close = _open_output(params["output"])
    try:
        _write_csv(stream, CONVERGENCE_HEADER, table, _provenance("baseline-convergence", params))
    finally:
        if close:
            stream.close()
    return 0


# ---------------------------------------------------------------------------
# scatter


def cmd_scatter(params: dict) -> int:
    g = _load_graph(params["graph"])
    s = _influencer_set(g, params)
    field = multi_source_distances(g, s.members)
    rows = []
    for v in range(g.node_count):
        if v in s:
            continue
        d = field.distance(v)
        inv = None if d is None else 1.0 / d
        rows.append((g.label(v), g.degree(v), inv))
    stream, close = _open_output(params["output"])
    try:
        _write_csv(stream, SCATTER_HEADER, rows, _provenance("scatter", params))
    finally:
        if close:
            stream.close()
    return 0


# ---------------------------------------------------------------------------
# kl


def cmd_kl(params: dict) -> int:
    g = _load_graph(params["graph"])
    s = _influencer_set(g, params)
    outside = [v for v in range(g.node_count) if v not in s]
    if not outside:
        raise ValueError("no nodes outside the influencer set")
    size = min(params["sample"], len(outside))
    if size < 1:
        raise ValueError("sample must be at least 1")
    rng = np.random.default_rng(params["seed"])
    picked = sorted(int(v) for v in rng.choice(np.asarray(outside), size=size, replace=False))
    rows = []
    for v in picked:
        try:
            rows.append((g.label(v), kl_distance(g, v, s)))
        except ValueError:
            continue  # node already adjacent to every candidate
    stream, close = _open_output(params["output"])
    try:
        _write_csv(stream, KL_HEADER, rows, _provenance("kl", params))
    finally:
        if close:
            stream.close()
    return 0


# ---------------------------------------------------------------------------
# wiring

_SHARED_DEFAULTS = {
    "graph": None,
    "k_percent": 1.0,
    "t_percent": 20.0,
    "seed": 0,
    "influencers": None,
    "output": None,
}

_BASELINE_DEFAULTS = {"baseline": "ba", "baseline_seeds": 10}

_DEFAULTS = {
    "fairness": {**_SHARED_DEFAULTS, **_BASELINE_DEFAULTS},
    "sweep": {
        **_SHARED_DEFAULTS,
        **_BASELINE_DEFAULTS,
        "n_visits": 100,
        "p_values": list(DEFAULT_P_GRID),
        "ab_pairs": [(a, b) for (_, a, b) in DEFAULT_VARIANTS],
        "seeds": None,
        "checkpoint_every": 25,
        "workers": 1,
    },
    "baseline-convergence": {
        "n_nodes": None,
        "edge_counts": None,
        "seeds_per_point": 20,
        "k_percent": 1.0,
        "t_percent": 20.0,
        "seed": 0,
        "output": None,
    },
    "scatter": dict(_SHARED_DEFAULTS),
    "kl": {**_SHARED_DEFAULTS, "sample": 100},
}

_COMMANDS = {
    "fairness": cmd_fairness,
    "sweep": cmd_sweep,
    "baseline-convergence": cmd_baseline_convergence,
    "scatter": cmd_scatter,
    "kl": cmd_kl,
}


def _add_shared(sub: argparse.ArgumentParser, with_graph: bool = True) -> None:
    if with_graph:
        sub.add_argument("--graph", help="edge-list file, two labels per line")
        sub.add_argument("--k-percent", dest="k_percent", type=float, help="influencer share (default 1)")
        sub.add_argument("--influencers", help="comma-separated labels overriding selection")
    sub.add_argument("--t-percent", dest="t_percent", type=float, help="worst-served share averaged (default 20)")
    sub.add_argument("--seed", type=int, help="random seed where a command draws anything")
    sub.add_argument("--config", help="JSON file with defaults for this command")
    sub.add_argument("--output", help="output file path, '-' or omitted for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairnet", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("fairness", help="fairness report for one graph")
    _add_shared(p)
    p.add_argument("--baseline", choices=("ba", "er"), help="baseline generator (default ba)")
    p.add_argument("--baseline-seeds", dest="baseline_seeds", type=int, help="baseline draws (default 10)")

    p = subs.add_parser("sweep", help="simulation grid over variants, mixing probabilities, seeds")
    _add_shared(p)
    p.add_argument("--baseline", choices=("ba", "er"), help="baseline generator (default ba)")
    p.add_argument("--baseline-seeds", dest="baseline_seeds", type=int, help="baseline draws (default 10)")
    p.add_argument("--n-visits", dest="n_visits", type=int, help="visits per run (default 100)")
    p.add_argument("--p-values", dest="p_values", help="comma-separated mixing probabilities")
    p.add_argument("--ab-pairs", dest="ab_pairs", help="exponent pairs a:b[,a:b...]")
    p.add_argument("--seeds", help="comma-separated run seeds (default: the --seed value)")
    p.add_argument("--checkpoint-every", dest="checkpoint_every", type=int, help="visits between checkpoints (default 25)")
    p.add_argument("--workers", type=int, help="concurrent runs (default 1)")

    p = subs.add_parser("baseline-convergence", help="baseline spread across edge budgets")
    p.add_argument("--n-nodes", dest="n_nodes", type=int, help="nodes per generated graph")
    p.add_argument("--edge-counts", dest="edge_counts", help="comma-separated edge budgets")
    p.add_argument("--seeds-per-point", dest="seeds_per_point", type=int, help="draws per model and budget (default 20)")
    p.add_argument("--k-percent", dest="k_percent", type=float, help="influencer share (default 1)")
    _add_shared(p, with_graph=False)

    p = subs.add_parser("scatter", help="degree vs inverse influencer distance per node")
    _add_shared(p)

    p = subs.add_parser("kl", help="triadic concentration for a sample of nodes")
    _add_shared(p)
    p.add_argument("--sample", type=int, help="sampled node count (default 100)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    defaults = _DEFAULTS[args.command]
    try:
        params = _coerce(_merge_params(args, defaults))
        if args.command in ("fairness", "sweep", "scatter", "kl") and not params.get("graph"):
            raise ValueError("--graph is required")
        if args.command == "baseline-convergence":
            if params.get("n_nodes") is None or not params.get("edge_counts"):
                raise ValueError("--n-nodes and --edge-counts are required")
        if args.command == "sweep" and not params.get("seeds"):
            params["seeds"] = [params["seed"]]
        return _COMMANDS[args.command](params)
    except BrokenPipeError:
        return 1
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"fairnet {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
