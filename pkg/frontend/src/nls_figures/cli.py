"""Command-line entry point: figures <kind> <inputs...> -o <out.png>."""

from __future__ import annotations

import argparse
import sys

from .errors import FigureInputError
from .render import render_heatmap, render_loglog, render_series

__all__ = ["build_parser", "main"]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Render solver CSV outputs as PNG figures.",
    )
    parser.add_argument(
        "kind", choices=("heatmap", "series", "loglog"), help="figure type"
    )
    parser.add_argument("inputs", nargs="+", help="input CSV path(s)")
    parser.add_argument("-o", "--output", required=True, help="output PNG path")
    parser.add_argument(
        "--vmin", type=float, default=None,
        help="fixed lower color limit (heatmap only)",
    )
    parser.add_argument(
        "--vmax", type=float, default=None,
        help="fixed upper color limit (heatmap only)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.kind == "heatmap":
            render_heatmap(args.inputs, args.output, vmin=args.vmin, vmax=args.vmax)
        elif args.kind == "series":
            render_series(args.inputs, args.output)
        else:
            render_loglog(args.inputs, args.output)
    except FigureInputError as exc:
        print(f"figures: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
