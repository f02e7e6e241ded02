"""braidfig: one subcommand per figure id.

Each consumes sweep CSVs produced by the braidc CLI and writes one image.
A schema mismatch or an empty data set exits non-zero without writing any
file.
"""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, FigureSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidfig",
        description="Render braidc experiment CSVs into figures")
    sub = parser.add_subparsers(dest="figure", required=True)
    for figure_id in FIGURE_IDS:
        p = sub.add_parser(figure_id)
        p.add_argument("--csv", action="append", required=True,
                       help="input CSV (repeatable)")
        p.add_argument("--out", required=True, help="output image path")
        p.add_argument("--logx", action="store_true")
        p.add_argument("--logy", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = render(FigureSpec(figure=args.figure, csv_paths=args.csv,
                                   out_path=args.out, logx=args.logx,
                                   logy=args.logy))
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.out_path} ({result.n_series} series, "
          f"{result.n_rows} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
