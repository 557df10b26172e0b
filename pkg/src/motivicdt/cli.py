"""Command-line surface.

Subcommands: ``check`` runs one named identity check, ``series`` prints the
coefficients of a named generating function through a chosen realisation,
``report`` runs the whole registry and writes JSON/markdown, a CSV table and
figures, and ``quiver`` exposes the presets and the cyclic derivative.

Exit codes: 0 on success, 1 if any check failed, 2 on usage errors.
The default truncation order is 10 and can be overridden with the
MOTIVICDT_ORDER environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import checks, quivers
from . import partition_functions as pf
from .lambda_ops import macdonald_curve_zeta, zeta
from .motives import AFFINE3, CONIFOLD, MotiveClass, curve_class, from_int
from .series import MotiveSeries, extract_T_linear, product_expand

DEFAULT_ORDER = 10


def _default_order() -> int:
    env = os.environ.get("MOTIVICDT_ORDER")
    if env is None:
        return DEFAULT_ORDER
    try:
        return int(env)
    except ValueError:
        print(f"warning: ignoring bad MOTIVICDT_ORDER={env!r}", file=sys.stderr)
        return DEFAULT_ORDER


def _macmahon(order: int) -> MotiveSeries:
    factors = [(MotiveSeries.term(-1, m, order) + 1, from_int(-m))
               for m in range(1, order + 1)]
    return product_expand(factors, order)


SERIES = {
    "z0": (pf.z0, "punctual Hilbert series of affine 3-space (minus-t convention)"),
    "f-curv": (pf.f_curv, "curve-punctual series (minus-t convention)"),
    "z-hilb-A3": (lambda n: pf.z_hilb(AFFINE3, n), "Hilbert series of affine 3-space"),
    "z-hilb-conifold": (lambda n: pf.z_hilb(CONIFOLD, n), "Hilbert series of the resolved conifold"),
    "q-quot-L": (lambda n: pf.q_quot(pf.line_in_affine3(), n), "Quot series of a line in affine 3-space"),
    "q-quot-conifold": (lambda n: pf.q_quot(pf.resolved_conifold(), n), "Quot series of the conifold curve"),
    "q-L-exp-form": (pf.local_quot_exp_form, "closed exponential form of the line Quot series (minus-t)"),
    "zeta-P1": (lambda n: zeta(curve_class(0), n), "Kapranov zeta of the projective line"),
    "macdonald-zeta-g1": (lambda n: macdonald_curve_zeta(1, n), "closed-form curve zeta, genus 1"),
    "macmahon": (_macmahon, "MacMahon series of plane partitions"),
    "pt-conifold-T1": (
        lambda n: extract_T_linear(pf.z_pt_conifold(n, 1)),
        "T-linear slice of the conifold stable-pair series (in -s)",
    ),
}


def _render_coefficient(c: MotiveClass, realization: str) -> str:
    if realization == "motivic":
        return str(c)
    if realization == "weight":
        return str(c.weight())
    if realization == "euler":
        return str(c.euler())
    raise ValueError(realization)


def _cmd_check(args) -> int:
    try:
        result = checks.run_check(args.name, args.order, args.seed)
    except checks.UnknownCheckError as e:
        print(f"unknown check {e.name!r}; available checks:", file=sys.stderr)
        for name in e.available:
            print(f"  {name}", file=sys.stderr)
        return 2
    print(f"{result.check}: {result.status} (order {result.order}, "
          f"seed {result.seed}, {result.elapsed_ms} ms)")
    if result.first_discrepancy:
        d = result.first_discrepancy
        print(f"  first discrepancy at t^{d['power']}:")
        print(f"    lhs = {d['lhs']}")
        print(f"    rhs = {d['rhs']}")
    return 0 if result.passed else 1


def _cmd_series(args) -> int:
    if args.name not in SERIES:
        print(f"unknown series {args.name!r}; available series:", file=sys.stderr)
        for name, (_, desc) in sorted(SERIES.items()):
            print(f"  {name}: {desc}", file=sys.stderr)
        return 2
    builder, desc = SERIES[args.name]
    series = builder(args.order)
    print(f"# {args.name}: {desc} (order {args.order}, {args.realization})")
    width = len(str(args.order))
    for n in range(series.order + 1):
        print(f"t^{n:<{width}}  {_render_coefficient(series.coefficient(n), args.realization)}")
    if args.json:
        print(series.to_json())
    return 0


def _cmd_report(args) -> int:
    results = checks.run_all(args.order, args.seed)
    from . import report

    written = report.write_report(results, args.out, args.order, args.seed, args.format)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(f"{r.status:4}  {r.check}")
    print(f"\n{len(results) - len(failed)}/{len(results)} checks passed; wrote:")
    for path in written:
        print(f"  {path}")
    return 1 if failed else 0


def _load_quiver(args):
    if args.preset:
        return quivers.preset(args.preset)
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    quiver = quivers.parse_quiver(text)
    potential = quivers.parse_potential(text, quiver)
    return quiver, potential


def _cmd_quiver_preset(args) -> int:
    try:
        quiver, potential = quivers.preset(args.name)
    except (KeyError, ValueError):
        print(f"unknown preset {args.name!r}; available: "
              + ", ".join(quivers.PRESET_NAMES), file=sys.stderr)
        return 2
    header = [args.name]
    if args.name.startswith("q-alpha:"):
        parts = args.name.split(":", 1)[1]
        header.append(f"dimension vector ({parts},1), stability (-1,...,-1,n)")
    sys.stdout.write(quivers.render_quiver_file(quiver, potential, header=header))
    return 0


def _cmd_quiver_derive(args) -> int:
    try:
        quiver, potential = _load_quiver(args)
    except quivers.QuiverSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (KeyError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        quiver.arrow(args.arrow)
    except KeyError:
        print(f"unknown arrow {args.arrow!r}; arrows: "
              + ", ".join(quiver.arrow_names()), file=sys.stderr)
        return 2
    print(quivers.cyclic_derivative(potential, args.arrow))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motivicdt",
        description="Exact engine for motivic curve-and-point partition functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    order_kw = dict(type=int, default=_default_order(),
                    help="truncation order (default %(default)s)")

    p = sub.add_parser("check", help="run one named identity check")
    p.add_argument("name")
    p.add_argument("--order", **order_kw)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("series", help="print a named generating function")
    p.add_argument("name")
    p.add_argument("--order", **order_kw)
    p.add_argument("--realization", choices=("motivic", "weight", "euler"),
                   default="motivic")
    p.add_argument("--json", action="store_true", help="also print the JSON export")
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("report", help="run every check and write report files")
    p.add_argument("--order", **order_kw)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--out", default="reports")
    p.set_defaults(fn=_cmd_report)

    q = sub.add_parser("quiver", help="quiver presets and cyclic derivatives")
    qsub = q.add_subparsers(dest="quiver_command", required=True)

    p = qsub.add_parser("preset", help="print a built-in quiver file")
    p.add_argument("name")
    p.set_defaults(fn=_cmd_quiver_preset)

    p = qsub.add_parser("derive", help="cyclic derivative of a potential")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="quiver file")
    src.add_argument("--preset", help="built-in quiver name")
    p.add_argument("--arrow", required=True)
    p.set_defaults(fn=_cmd_quiver_derive)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
