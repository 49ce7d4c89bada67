"""``polyvol`` command-line interface.

Exit codes: 0 success, 1 failed check or computational error, 2 usage or
parse error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from polyvol.exact import format_rational, parse_rational
from polyvol.gale import gale_transform, vertex_sets_from_gale
from polyvol.hrep import Inequality, ParseError, enumerate_vertices, find_redundant, parse_hrep, slice
from polyvol.symmetry import find_symmetries
from polyvol.triangulate import (
    incremental_triangulation,
    parse_triangulation,
    total_volume,
    verify_covering,
)


class UsageError(ValueError):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_hrep(text)


def _vertices(p, args):
    return enumerate_vertices(p, threads=args.threads)


def cmd_vertices(args, out):
    p = _load(args.file)
    vs = _vertices(p, args)
    for x, inc in zip(vs.points, vs.incidences):
        labels = " ".join(p.labels[i] for i in sorted(inc))
        out.write(" ".join(format_rational(c) for c in x) + f" [{labels}]\n")
    return 0


def cmd_volume(args, out):
    p = _load(args.file)
    vs = _vertices(p, args)
    vol = total_volume(incremental_triangulation(vs.points)) if len(vs) else 0
    out.write(format_rational(vol) + "\n")
    return 0


def cmd_redundant(args, out):
    p = _load(args.file)
    for i in sorted(find_redundant(p, _vertices(p, args))):
        out.write(p.labels[i] + "\n")
    return 0


def cmd_slice(args, out):
    p = _load(args.file)
    if len(args.by) != p.dim + 1:
        raise UsageError(f"--by needs {p.dim} coefficients and a right-hand side")
    try:
        values = [parse_rational(v) for v in args.by]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    h = Inequality(tuple(values[:-1]), values[-1])
    below, above = slice(p, h, args.label)
    if args.out:
        for suffix, piece in (("le", below), ("ge", above)):
            Path(f"{args.out}.{suffix}.hrep").write_text(piece.to_text())
    else:
        out.write(f"# {args.label} <= rhs\n" + below.to_text())
        out.write(f"# {args.label} >= rhs\n" + above.to_text())
    return 0


def cmd_gale(args, out):
    p = _load(args.file)
    g = gale_transform(p)
    out.write(g.to_text())
    out.write("vertices\n")
    for labels in vertex_sets_from_gale(g):
        out.write(" ".join(sorted(labels, key=p.labels.index)) + "\n")
    return 0


def cmd_symmetry(args, out):
    p = _load(args.file)
    group = find_symmetries(p)
    out.write(f"order {len(group)}\n")
    for g in group:
        out.write(g.format(p.order or None) + "\n")
    return 0


def _insertion_order(args, count):
    if args.order is not None:
        try:
            order = [int(v) for v in args.order.replace(",", " ").split()]
        except ValueError:
            raise UsageError("--order takes vertex indices") from None
        if sorted(order) != list(range(count)):
            raise UsageError(f"--order must be a permutation of 0..{count - 1}")
        return order
    order = list(range(count))
    if args.seed is not None:
        random.Random(args.seed).shuffle(order)
    return order


def cmd_triangulate(args, out):
    p = _load(args.file)
    vs = _vertices(p, args)
    order = _insertion_order(args, len(vs))
    t = incremental_triangulation([vs.points[i] for i in order])
    out.write(t.to_text())
    return 0


def cmd_verify_cover(args, out):
    try:
        t = parse_triangulation(Path(args.tri_file).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.tri_file}: {exc.strerror}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    p = _load(args.hrep_file)
    report = verify_covering(t, p)
    out.write("\n".join(report.lines()) + "\n")
    return 0 if report.passed else 1


def cmd_verify(args, out):
    if not args.paper:
        raise UsageError("verify needs --paper")
    from polyvol.fixture import verify_all

    claims = verify_all()
    for claim in claims:
        out.write(claim.line() + "\n")
    return 0 if all(c.passed for c in claims) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyvol", description="Exact polytope vertices, triangulations and volumes.")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for vertex enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (
        ("vertices", cmd_vertices, "list vertices with their tight inequalities"),
        ("volume", cmd_volume, "exact volume"),
        ("redundant", cmd_redundant, "labels of inequalities that are not facets"),
        ("gale", cmd_gale, "Gale diagram and the vertex facet sets it encodes"),
        ("symmetry", cmd_symmetry, "coordinate-permutation symmetry group"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.set_defaults(func=func)

    sp = sub.add_parser("slice", help="cut by a hyperplane into two H-representations")
    sp.add_argument("file")
    sp.add_argument("--by", nargs="+", required=True, metavar="C", help="coefficients followed by the right-hand side")
    sp.add_argument("--label", default="cut")
    sp.add_argument("--out", metavar="PREFIX", help="write PREFIX.le.hrep and PREFIX.ge.hrep")
    sp.set_defaults(func=cmd_slice)

    sp = sub.add_parser("triangulate", help="triangulate the vertex set")
    sp.add_argument("file")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--order", help="insertion order as indices into the sorted vertex list")
    group.add_argument("--seed", type=int, help="shuffle the insertion order with this seed")
    sp.set_defaults(func=cmd_triangulate)

    sp = sub.add_parser("verify-cover", help="check a triangulation against an H-representation")
    sp.add_argument("tri_file")
    sp.add_argument("hrep_file")
    sp.set_defaults(func=cmd_verify_cover)

    sp = sub.add_parser("verify", help="reproduce the bundled polytope's claims")
    sp.add_argument("--paper", action="store_true", help="run the bundled fixture checks")
    sp.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        err.write("polyvol: --threads must be positive\n")
        return 2
    try:
        return args.func(args, out)
    except (UsageError, ParseError) as exc:
        err.write(f"polyvol: {exc}\n")
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        err.write(f"polyvol: {exc}\n")
        return 1


def main():
    sys.exit(run())
