"""`render` command: turn workbench CSVs into figures.

    render --kind fig2 --in DIR --out fig2.png
    render --kind mc --in mc.csv --out mc.png
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import FigureSpec, render
from .schemas import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="render",
                                     description="Render workbench CSV outputs")
    parser.add_argument("--kind", choices=["fig2", "mc"], required=True)
    parser.add_argument("--in", dest="inputs", required=True,
                        help="fig2: directory of fig2_<dist>_*.csv; mc: one CSV")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--log-h", action=argparse.BooleanOptionalAction,
                        default=True, help="log scale on the height axis")
    parser.add_argument("--log-ratio", action=argparse.BooleanOptionalAction,
                        default=False, help="log scale on the ratio axis")
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(args.kind, Path(args.inputs), Path(args.out),
                      log_h=args.log_h, log_ratio=args.log_ratio, dpi=args.dpi)
    try:
        out = render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
