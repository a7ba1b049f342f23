"""Turn experiment CSV files into charts.

The experiment CLI keeps its CSVs raw, one row per checkpoint per run, so
any averaging for presentation happens here.  Every render writes the exact
plotted coordinates next to the image as '<image>.agg.csv'; tests diff that
file against an independent group-by of the same input, and two renders of
the same CSV produce identical aggregation files.

Three chart kinds are supported:

  sweep        one line per recommendation variant, mixing probability on
               the x axis, the run-final metric averaged across seeds on y
  convergence  mean graph fairness per generator model across edge budgets,
               with std error bars
  scatter      node degree against 1/distance-to-influencers
"""

import dataclasses
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

KINDS = ("sweep", "convergence", "scatter")

REQUIRED = {
    "sweep": ("variant", "p", "seed", "visit", "metric", "value"),
    "convergence": ("model", "edge_count", "mean", "std"),
    "scatter": ("node", "degree", "inv_distance"),
}

# sweep files carry bookkeeping rows (the final baseline mean) next to the
# metric series; only these two metrics are chartable
PLOTTED_METRICS = ("fairness_index", "unreachable_fraction")

_METRIC_LABELS = {
    "fairness_index": "fairness index",
    "unreachable_fraction": "unreachable fraction",
}


class SchemaError(ValueError):
    """The input CSV lacks columns the chart kind needs."""


@dataclasses.dataclass
class ChartSpec:
    input: str
    kind: str
    output: str
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None


def agg_path(output: str) -> str:
    """Where the plotted coordinates land, next to the image."""
    return output + ".agg.csv"


def load_table(path: str, kind: str) -> pd.DataFrame:
    if kind not in REQUIRED:
        raise ValueError(f"unknown chart kind {kind!r}, expected one of {', '.join(KINDS)}")
    # round_trip parsing keeps every float bit-identical to the CSV text,
    # so the sidecar file reproduces the source values digit for digit
    df = pd.read_csv(path, comment="#", float_precision="round_trip")
    missing = [c for c in REQUIRED[kind] if c not in df.columns]
    if missing:
        raise SchemaError(
            f"input lacks required column(s) for kind '{kind}': {', '.join(missing)}"
        )
    return df


def sweep_aggregate(df: pd.DataFrame):
    """Run-final value per (variant, p, seed), then the mean across seeds.

    Returns the aggregate frame and the metric it carries.  A sweep file
    holds exactly one chartable metric; mixing files is almost always an
    accidental concatenation, so it is refused.
    """
    points = df[df["metric"].isin(PLOTTED_METRICS)].copy()
    if points.empty:
        raise SchemaError(
            "no chartable rows: expected metric column values "
            + " or ".join(PLOTTED_METRICS)
        )
    metrics = sorted(points["metric"].unique())
    if len(metrics) > 1:
        raise ValueError(f"sweep input mixes metrics: {', '.join(metrics)}")
    points["value"] = pd.to_numeric(points["value"])
    ordered = points.sort_values(["variant", "p", "seed", "visit"], kind="mergesort")
    finals = ordered.groupby(["variant", "p", "seed"], sort=False).tail(1)
    agg = (
        finals.groupby(["variant", "p"], as_index=False)
        .agg(value=("value", "mean"), seeds=("seed", "nunique"))
        .sort_values(["variant", "p"], kind="mergesort", ignore_index=True)
    )
    return agg, metrics[0]


def convergence_aggregate(df: pd.DataFrame) -> pd.DataFrame:
    """Convergence rows are pre-aggregated; normalize the order and dtypes."""
    agg = df.loc[:, list(REQUIRED["convergence"])].copy()
    for col in ("edge_count", "mean", "std"):
        agg[col] = pd.to_numeric(agg[col])
    return agg.sort_values(["model", "edge_count"], kind="mergesort", ignore_index=True)


def scatter_points(df: pd.DataFrame) -> pd.DataFrame:
    """Numeric (degree, inv_distance) pairs; rows with no finite distance drop out."""
    pts = df.loc[:, list(REQUIRED["scatter"])].copy()
    pts["degree"] = pd.to_numeric(pts["degree"])
    pts["inv_distance"] = pd.to_numeric(pts["inv_distance"], errors="coerce")
    pts = pts.dropna(subset=["inv_distance"]).reset_index(drop=True)
    if pts.empty:
        raise ValueError("scatter input has no node with a finite influencer distance")
    return pts


def _finish(fig, ax, spec: ChartSpec, default_title: str, xlabel: str, ylabel: str):
    ax.set_xlabel(spec.xlabel or xlabel)
    ax.set_ylabel(spec.ylabel or ylabel)
    ax.set_title(spec.title or default_title)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)


def _render_sweep(spec: ChartSpec) -> pd.DataFrame:
    agg, metric = sweep_aggregate(load_table(spec.input, "sweep"))
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for variant, block in agg.groupby("variant", sort=True):
        block = block.sort_values("p")
        ax.plot(block["p"], block["value"], marker="o", label=str(variant))
    ax.legend(fontsize=8)
    if metric == "fairness_index":
        ax.annotate(
            "lower index means a fairer graph",
            xy=(0.02, 0.02),
            xycoords="axes fraction",
            fontsize=8,
            style="italic",
        )
    _finish(
        fig,
        ax,
        spec,
        f"final {_METRIC_LABELS[metric]} vs. mixing probability",
        "triadic closure probability P",
        _METRIC_LABELS[metric],
    )
    return agg


def _render_convergence(spec: ChartSpec) -> pd.DataFrame:
    agg = convergence_aggregate(load_table(spec.input, "convergence"))
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for model, block in agg.groupby("model", sort=True):
        ax.errorbar(
            block["edge_count"],
            block["mean"],
            yerr=block["std"],
            marker="o",
            capsize=3,
            label=str(model),
        )
    ax.legend(fontsize=8)
    _finish(
        fig,
        ax,
        spec,
        "baseline fairness across edge budgets",
        "edges per generated graph",
        "mean graph fairness",
    )
    return agg


def _render_scatter(spec: ChartSpec) -> pd.DataFrame:
    pts = scatter_points(load_table(spec.input, "scatter"))
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.scatter(pts["degree"], pts["inv_distance"], s=18, alpha=0.7)
    _finish(
        fig,
        ax,
        spec,
        "degree vs. proximity to influencers",
        "degree",
        "1 / hops to nearest influencer",
    )
    return pts


_RENDERERS = {
    "sweep": _render_sweep,
    "convergence": _render_convergence,
    "scatter": _render_scatter,
}


def render(spec: ChartSpec):
    """Write the image for spec plus its aggregation file.

    Returns (image_path, agg_path).  The aggregation file holds exactly the
    coordinates that were drawn, so downstream checks never have to parse
    the image.
    """
    if spec.kind not in _RENDERERS:
        raise ValueError(f"unknown chart kind {spec.kind!r}, expected one of {', '.join(KINDS)}")
    out_dir = os.path.dirname(os.path.abspath(spec.output))
    os.makedirs(out_dir, exist_ok=True)
    agg = _RENDERERS[spec.kind](spec)
    sidecar = agg_path(spec.output)
    agg.to_csv(sidecar, index=False)
    return spec.output, sidecar
