"""Command-line front end for the grid-link pipelines.

One subcommand per pipeline stage: gen, validate, project, gauss, lk, phi,
bench.  Link input comes from a file path or `-` for standard input; all
output is newline-terminated and deterministic for fixed flags, so the
commands compose with shells and diff-based tests.  Exit codes: 0 success,
1 domain error (bad link, failed agreement check), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from gridknot.bench import OPS, render_figures, run_scaling, write_rows
from gridknot.diagram import build_diagram, format_gauss, to_gauss
from gridknot.fastphi import phi_3d
from gridknot.grid import (
    GridLink,
    GridLinkError,
    parse_grid_link,
    random_grid_link,
    serialize_grid_link,
    validate,
)
from gridknot.invariants import format_phi, lk_2d, lk_3d, phi_2d
from gridknot.shear import diagrams_equal, oracle_shear_diagram

LINK_SIZES = (8, 12, 16, 24, 32)
COUNT_SIZES = tuple(2**k for k in range(10, 17))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_link(path: str, check: bool = True) -> GridLink:
    return parse_grid_link(_read_text(path), check=check)


def _cmd_gen(args) -> int:
    link = random_grid_link(args.L, args.components, seed=args.seed,
                            mix_steps=args.mix)
    sys.stdout.write(serialize_grid_link(link))
    return 0


def _cmd_validate(args) -> int:
    link = _load_link(args.input, check=False)
    violations = validate(link)
    if not violations:
        print("ok")
        return 0
    for v in violations:
        print(f"{v.kind}: {v.message}")
    return 1


def _cmd_project(args) -> int:
    link = _load_link(args.input)
    diagram = build_diagram(link)
    for i, c in enumerate(diagram.crossings, start=1):
        kind, x, y = c.field
        print(
            f"crossing {i}: over={c.over.t} under={c.under.t}"
            f" type={c.type.code} sign={'+' if c.type.sign > 0 else '-'}"
            f" field={kind} {x} {y}"
        )
    print(f"n={diagram.n}")
    if args.oracle:
        a, b = (Fraction(s) for s in args.oracle)
        reference = oracle_shear_diagram(link, a, b)
        if not diagrams_equal(diagram, reference):
            print(f"oracle a={a} b={b}: DISAGREE")
            return 1
        print(f"oracle a={a} b={b}: agree")
    return 0


def _cmd_gauss(args) -> int:
    link = _load_link(args.input)
    sys.stdout.write(format_gauss(to_gauss(build_diagram(link))))
    return 0


def _cmd_lk(args) -> int:
    link = _load_link(args.input)
    values = {}
    if args.method in ("2d", "both"):
        values["2d"] = lk_2d(build_diagram(link))
    if args.method in ("3d", "both"):
        values["3d"] = lk_3d(link)
    if len(set(values.values())) > 1:
        print(f"error: lk mismatch: {values}", file=sys.stderr)
        return 1
    print(next(iter(values.values())))
    return 0


def _cmd_phi(args) -> int:
    link = _load_link(args.input)
    vectors = {}
    if args.method in ("2d", "both"):
        vectors["2d"] = phi_2d(to_gauss(build_diagram(link)), args.d)
    if args.method in ("3d", "both"):
        vectors["3d"] = phi_3d(link, args.d)
    if len(vectors) == 2 and vectors["2d"].entries != vectors["3d"].entries:
        print("error: phi mismatch between 2d and 3d routes", file=sys.stderr)
        return 1
    sys.stdout.write(format_phi(next(iter(vectors.values()))))
    return 0


def _cmd_bench(args) -> int:
    ops = args.op or list(OPS)
    rows = []
    for op in ops:
        if args.sizes:
            sizes = args.sizes
        else:
            sizes = COUNT_SIZES if op == "count_increasing" else LINK_SIZES
        rows.extend(run_scaling(op, sizes, seeds=args.seeds, reps=args.reps))
    if args.output == "-":
        write_rows(rows, sys.stdout, args.format)
        fig_dir = args.figures
    else:
        with open(args.output, "w") as out:
            write_rows(rows, out, args.format)
        fig_dir = args.figures or str(Path(args.output).parent)
    if fig_dir:
        for path in render_figures(rows, fig_dir):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridknot",
        description="grid-link diagrams, linking numbers, subdiagram counts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random grid link")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--components", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mix", type=int, default=1000, help="mixing steps")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("validate", help="report structural violations")
    p.add_argument("input", help="link file or - for stdin")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("project", help="list crossings under the canonical shear")
    p.add_argument("input", help="link file or - for stdin")
    p.add_argument(
        "--oracle", nargs=2, metavar=("A", "B"),
        help="rational shear a b (as num/den) for the exact-shear cross-check",
    )
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("gauss", help="print the Gauss diagram")
    p.add_argument("input", help="link file or - for stdin")
    p.set_defaults(func=_cmd_gauss)

    p = sub.add_parser("lk", help="linking number of a 2-component link")
    p.add_argument("input", help="link file or - for stdin")
    p.add_argument("--method", choices=("2d", "3d", "both"), default="both")
    p.set_defaults(func=_cmd_lk)

    p = sub.add_parser("phi", help="subdiagram count vector")
    p.add_argument("input", help="link file or - for stdin")
    p.add_argument("--d", type=int, default=1, help="maximum arrows per subdiagram")
    p.add_argument("--method", choices=("2d", "3d", "both"), default="both")
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("bench", help="scaling measurements as CSV plus figures")
    p.add_argument("--op", action="append", choices=OPS,
                   help="operation to measure; repeat for several (default all)")
    p.add_argument("--sizes", type=int, nargs="+",
                   help="ascending sizes (L, or K for count_increasing)")
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.add_argument("--output", default="-", help="report path or - for stdout")
    p.add_argument("--figures", help="directory for scaling_<op>.png files "
                   "(default: alongside the report file)")
    p.set_defaults(func=_cmd_bench)

    return parser


def dispatch(argv) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    try:
        return args.func(args)
    except (GridLinkError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
