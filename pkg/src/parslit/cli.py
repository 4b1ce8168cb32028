"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 non-generic surface,
3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .census import enumerate_cells
from .core import ParallelSlitDomain, SlitError
from .io import InvariantViolation, ParseError, read_document, write_document
from .render import View, parse_view, render_svg
from .surface import (
    GluedGrid,
    InternalAssertion,
    cone_points,
    ends,
    genus_via_cones,
    genus_via_euler,
    glue,
    is_generic,
)
from .uniformize import NonGeneric, scramble, uniformize
from .xrat import format_rational, format_xrat

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NON_GENERIC = 2
EXIT_INTERNAL = 3


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return read_document(fh.read())


def _as_grid(obj, path):
    if isinstance(obj, GluedGrid):
        return obj
    if isinstance(obj, ParallelSlitDomain):
        return glue(obj)
    raise InvariantViolation("%s: expected a domain or grid document" % path)


def _cmd_validate(args):
    _load(args.file)
    print("ok")
    return EXIT_OK


def _cmd_glue(args):
    obj = _load(args.file)
    if not isinstance(obj, ParallelSlitDomain):
        raise InvariantViolation("%s: expected a domain document" % args.file)
    sys.stdout.write(write_document(glue(obj)))
    return EXIT_OK


def _cmd_invariants(args):
    grid = _as_grid(_load(args.file), args.file)
    report = is_generic(grid)
    end_data = ends(grid)
    out = {
        "genus_via_cones": genus_via_cones(grid),
        "genus_via_euler": genus_via_euler(grid),
        "punctures": grid.m + 1,
        "residues": [
            {"label": e.label, "circumference": format_xrat(e.circumference)}
            for e in end_data.entries
        ],
        "zeros": [
            {
                "wall": z.wall,
                "position": format_rational(grid.wall_positions[z.wall]),
                "cone_angle_multiple": z.k,
                "order": z.k - 1,
            }
            for z in cone_points(grid).zeros
        ],
        "generic": bool(report),
        "diagnosis": report.diagnosis,
    }
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_uniformize(args):
    grid = _as_grid(_load(args.file), args.file)
    sys.stdout.write(write_document(uniformize(grid)))
    return EXIT_OK


def _cmd_scramble(args):
    grid = _as_grid(_load(args.file), args.file)
    sys.stdout.write(write_document(scramble(grid, args.seed)))
    return EXIT_OK


def _cmd_roundtrip(args):
    obj = _load(args.file)
    if not isinstance(obj, ParallelSlitDomain):
        raise InvariantViolation("%s: expected a domain document" % args.file)
    recovered = uniformize(scramble(glue(obj), args.seed))
    if recovered == obj:
        print("roundtrip exact")
        return EXIT_OK
    print("roundtrip mismatch", file=sys.stderr)
    return EXIT_INTERNAL


def _cmd_census(args):
    report = enumerate_cells(args.g, args.m, args.method)
    sys.stdout.write(write_document(report))
    return EXIT_OK


def _cmd_render(args):
    obj = _load(args.file)
    view = parse_view(args.view) if args.view else None
    svg = render_svg(obj, view)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="parslit",
        description="Exact parallel slit domains: gluing, invariants, normal forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a document and its invariants")
    p.add_argument("file")
    p.set_defaults(run=_cmd_validate)

    p = sub.add_parser("glue", help="glue a domain into a grid document")
    p.add_argument("file")
    p.set_defaults(run=_cmd_glue)

    p = sub.add_parser("invariants", help="report genus, ends, zeros, genericity")
    p.add_argument("file")
    p.set_defaults(run=_cmd_invariants)

    p = sub.add_parser("uniformize", help="recover the normal-form domain")
    p.add_argument("file")
    p.set_defaults(run=_cmd_uniformize)

    p = sub.add_parser("scramble", help="apply random presentation moves")
    p.add_argument("file")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(run=_cmd_scramble)

    p = sub.add_parser("roundtrip", help="check scramble then uniformize is exact")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=_cmd_roundtrip)

    p = sub.add_parser("census", help="enumerate top cells for (g, m)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=("brute", "stepped"), default="brute")
    p.set_defaults(run=_cmd_census)

    p = sub.add_parser("render", help="draw the slit picture as SVG")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--view", help="XMIN:XMAX:YMIN:YMAX with rational entries")
    p.set_defaults(run=_cmd_render)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except NonGeneric as exc:
        print("non-generic: %s" % (exc,), file=sys.stderr)
        return EXIT_NON_GENERIC
    except InternalAssertion as exc:
        print("internal error: %s" % (exc,), file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, InvariantViolation, SlitError, OSError, ValueError) as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
