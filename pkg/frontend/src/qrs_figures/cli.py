"""Command line for the renderer.

    qrs-render <kind> --in <csv> [--in <csv> ...] --out <image>

Exit codes mirror the solver CLI: 0 success, 1 usage, 2 bad input
(missing file, empty table, schema mismatch).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .render import FigureSpec, render
from .schema import KINDS, SchemaError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="qrs-render",
                     description="render rabi-square CSV tables as figures")
    parser.add_argument("--version", action="version",
                        version=f"qrs-render {__version__}")
    parser.add_argument("kind", choices=sorted(KINDS))
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="CSV", help="input table (repeatable for "
                        "the infidelity kind)")
    parser.add_argument("--out", required=True, metavar="IMAGE",
                        help="output image path; format from the suffix")
    parser.add_argument("--title", default=None)
    parser.add_argument("--xlim", nargs=2, type=float, default=None,
                        metavar=("LO", "HI"))
    parser.add_argument("--ylim", nargs=2, type=float, default=None,
                        metavar=("LO", "HI"))
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        kind=args.kind,
        inputs=tuple(Path(p) for p in args.inputs),
        out=Path(args.out),
        title=args.title,
        xlim=tuple(args.xlim) if args.xlim else None,
        ylim=tuple(args.ylim) if args.ylim else None,
        dpi=args.dpi,
    )
    try:
        report = render(spec)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    extras = "; ".join(report.notes)
    print(f"wrote {report.out} ({report.kind}, {report.rows} rows, "
          f"{report.size[0]}x{report.size[1]}px{', ' + extras if extras else ''})")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
