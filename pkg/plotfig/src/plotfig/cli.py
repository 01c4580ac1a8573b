"""plotfig command line: one figure per call, or a batch list.

Usage:
  plotfig <kind> <csv...> [--fits fits.json] -o out.svg
  plotfig batch figures.list

figures.list holds one figure per line in the same syntax as the single
call (without the leading program name); blank lines and # comments are
skipped.  Any schema mismatch exits nonzero without writing a file.
"""

from __future__ import annotations

import argparse
import shlex
import sys

from .render import KINDS, FigureSpec, render
from .schema import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotfig",
        description="Regenerate spectral-comparison figures from CSV artifacts.")
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind)
        p.add_argument("csv", nargs="+", help="input CSV file(s)")
        p.add_argument("--fits", help="fits.json with slope annotations")
        p.add_argument("-o", "--out", required=True, help="output image path")
        p.add_argument("--xlabel")
        p.add_argument("--ylabel")
    batch = sub.add_parser("batch")
    batch.add_argument("list_file", help="file with one figure spec per line")
    return parser


def _spec_from_args(args) -> FigureSpec:
    style = {k: v for k, v in (("xlabel", args.xlabel), ("ylabel", args.ylabel))
             if v}
    return FigureSpec(kind=args.kind, csv_paths=tuple(args.csv),
                      out_path=args.out, fits_path=args.fits, style=style)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.kind == "batch":
            with open(args.list_file, encoding="utf-8") as fh:
                lines = [ln.split("#", 1)[0].strip() for ln in fh]
            for line in filter(None, lines):
                sub_args = parser.parse_args(shlex.split(line))
                if sub_args.kind == "batch":
                    raise SchemaError("nested batch entries are not allowed")
                info = render(_spec_from_args(sub_args))
                print(f"wrote {info.out_path}")
        else:
            info = render(_spec_from_args(args))
            print(f"wrote {info.out_path}")
    except SchemaError as exc:
        print(f"plotfig: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"plotfig: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
