"""Command line wrapper around the chart renderer.

Usage: plot --kind {sweep|convergence|scatter} --input results.csv
            --output chart.png [--title TEXT] [--xlabel TEXT] [--ylabel TEXT]

Exits nonzero with a message on stderr when the input does not carry the
columns the kind requires, naming the missing ones.
"""

import argparse
import sys

from .render import KINDS, ChartSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plot", description=__doc__.splitlines()[0])
    parser.add_argument("--kind", required=True, choices=KINDS, help="chart type")
    parser.add_argument("--input", required=True, help="CSV written by the experiment CLI")
    parser.add_argument("--output", required=True, help="image file to write")
    parser.add_argument("--title", help="chart title (default: per kind)")
    parser.add_argument("--xlabel", help="x axis label override")
    parser.add_argument("--ylabel", help="y axis label override")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = ChartSpec(
        input=args.input,
        kind=args.kind,
        output=args.output,
        title=args.title,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
    )
    try:
        image, sidecar = render(spec)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"plot: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {image} ({sidecar} holds the plotted points)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
