from .render import (
    KINDS,
    REQUIRED,
    ChartSpec,
    SchemaError,
    agg_path,
    convergence_aggregate,
    load_table,
    render,
    scatter_points,
    sweep_aggregate,
)

__all__ = [
    "KINDS",
    "REQUIRED",
    "ChartSpec",
    "SchemaError",
    "agg_path",
    "convergence_aggregate",
    "load_table",
    "render",
    "scatter_points",
    "sweep_aggregate",
]
