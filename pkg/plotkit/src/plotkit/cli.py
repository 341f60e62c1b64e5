"""Entry points: plot-spirals and plot-contours."""

import argparse
import sys
from pathlib import Path

from .contours import render_contours
from .spec import DEFAULT_CMAP, FigureSpec
from .spirals import PLANES, render_spirals
from .tables import TableError


def main_spirals(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-spirals",
        description="Render phase portraits from trajectory export tables.",
    )
    parser.add_argument("tables", nargs="+", help="trajectory tables (csv or json)")
    parser.add_argument("--out", default="fig1.png", help="output image path")
    parser.add_argument("--planes", default="Q1-Pi1,Q2-Pi2",
                        help=f"comma-separated planes from {sorted(PLANES)}")
    parser.add_argument("--cmap", default=DEFAULT_CMAP)
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    spec = FigureSpec(inputs=tuple(args.tables), output=args.out,
                      planes=tuple(args.planes.split(",")), cmap=args.cmap, dpi=args.dpi)
    try:
        print(render_spirals(spec))
    except (TableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main_contours(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-contours",
        description="Render the squeezed-marginal contour sequence from grid exports.",
    )
    parser.add_argument("grid_dir", help="directory holding fig2_grid_k*.{csv,json}")
    parser.add_argument("--out", default="fig2.png", help="output image path")
    parser.add_argument("--cmap", default=DEFAULT_CMAP)
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument("--split", action="store_true",
                        help="also write one decoration-free image per snapshot")
    args = parser.parse_args(argv)
    grid_dir = Path(args.grid_dir)
    inputs = sorted(grid_dir.glob("fig2_grid_k*.csv")) + sorted(grid_dir.glob("fig2_grid_k*.json"))
    spec = FigureSpec(inputs=tuple(inputs), output=args.out, cmap=args.cmap,
                      dpi=args.dpi, split_panels=args.split)
    try:
        for path in render_contours(spec):
            print(path)
    except (TableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
