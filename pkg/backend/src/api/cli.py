'''
Command-line front end.

  gf a b c d [--method dp|closed]      single-path generating function
  region m k DENTS [--route R | --all] tiling generating function
  family / lgv / closed m k DENTS      shorthands for region --route ...
  verify SUITE [--max-m --max-k ...]   run a verification suite
  render m k DENTS [--family N | --tiling] [--out FILE]

DENTS is a comma list such as 0,1,3. Put `--` before a list starting with a
minus sign: `region 2 1 -- -1,0`.

Exit codes: 0 ok, 1 verification failure, 2 usage, 3 route disagreement,
4 enumeration cap.
'''
import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from backend.src.api.models import DentSequence, PropMatrixSpec, RegionSpec
from backend.src.errors import QHexError
from backend.src.graph.nodes import ROUTES
from backend.src.graph.workflow import run_region
from backend.src.services.exact import RationalFn, lp_from_json, lp_substitute_power, lp_to_json, pretty_factored, rf_eq, rf_to_json
from backend.src.services.identity import product_rhs
from backend.src.services.lgv import reduce
from backend.src.services.paths import PathSpec, gf_closed, gf_dp
from backend.src.services.render import render_family, write_svg
from backend.src.services.sweeps import SUITES, run_suite

logger = logging.getLogger("qhex.cli")

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_DISAGREE = 3
EXIT_CAP = 4

STATUS_EXIT = {"PASS": EXIT_OK, "FAIL": EXIT_VERIFY, "DISAGREE": EXIT_DISAGREE, "CAP": EXIT_CAP}


def _region(args) -> RegionSpec:
    return RegionSpec(m=args.m, k=args.k, dents=DentSequence.parse(args.dents))


def cmd_gf(args) -> int:
    spec = PathSpec.of(args.a, args.b, args.c, args.d)
    dp = gf_dp(spec)
    if args.method == "dp" or not spec.feasible():
        print(lp_to_json(dp))
        if args.pretty:
            print(pretty_factored(dp))
        return EXIT_OK
    closed = gf_closed(spec)
    agrees = rf_eq(closed, RationalFn.from_poly(dp))
    print(rf_to_json(closed))
    print(json.dumps({"rf_eq_dp": agrees}))
    if args.pretty:
        print(str(closed))
    if not agrees:
        logger.error(f"closed form and recursion disagree for {spec}")
        return EXIT_DISAGREE
    return EXIT_OK


def _print_factored(region: RegionSpec, poly_json: str) -> None:
    print(pretty_factored(lp_from_json(poly_json)))
    if region.last_path_feasible:
        prefactor, _ = reduce(region)
        rhs = lp_substitute_power(product_rhs(PropMatrixSpec(k=region.k, a=region.dents)), 4)
        print(f"prefactor: {prefactor.value}")
        print(f"product at q^4: {pretty_factored(rhs)}")


def cmd_region(args) -> int:
    region = _region(args)
    routes = list(ROUTES) if args.all else [args.route]
    final_state = run_region(region.m, region.k, region.dents.values, routes=routes, cap=args.cap)
    status = final_state.get("final_status", "FAIL")
    for error in final_state.get("errors", []):
        print(f"error: {error}", file=sys.stderr)
    if status == "PASS":
        print(final_state["final_poly"])
        if args.pretty:
            _print_factored(region, final_state["final_poly"])
    elif status == "DISAGREE":
        print(json.dumps(final_state.get("results", {}), indent=2))
    return STATUS_EXIT[status]


def cmd_verify(args) -> int:
    report = run_suite(args.suite, max_m=args.max_m, max_k=args.max_k, seed=args.seed, workers=args.workers)
    print(report.model_dump_json(indent=2))
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_render(args) -> int:
    region = _region(args)
    text, family = render_family(region, index=args.family, tiling_only=args.tiling, cap=args.cap)
    if args.out:
        path = write_svg(text, args.out)
        logger.info(f"SVG written to {path} ({len(family.labels())} labelled lozenges)")
    else:
        print(text)
    return EXIT_OK


def _region_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("m", type=int, help="number of paths")
    parser.add_argument("k", type=int, help="height parameter")
    parser.add_argument("dents", help="comma separated, strictly increasing dent positions")
    parser.add_argument("--cap", type=int, default=None, help="enumeration cap (default QHEX_CAP)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhex",
        description="Weighted lozenge tilings of quartered hexagons with dents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gf = sub.add_parser("gf", help="generating function of paths (a,b) -> (c,d)")
    for name in ("a", "b", "c", "d"):
        gf.add_argument(name, type=int)
    gf.add_argument("--method", choices=("dp", "closed"), default="dp")
    gf.add_argument("--pretty", action="store_true")
    gf.set_defaults(handler=cmd_gf)

    region = sub.add_parser("region", help="tiling generating function of a region")
    _region_arguments(region)
    group = region.add_mutually_exclusive_group()
    group.add_argument("--route", choices=ROUTES, default="lgv")
    group.add_argument("--all", action="store_true", help="run every route and require agreement")
    region.add_argument("--pretty", action="store_true")
    region.set_defaults(handler=cmd_region)

    for route in ROUTES:
        shorthand = sub.add_parser(route, help=f"region --route {route}")
        _region_arguments(shorthand)
        shorthand.add_argument("--pretty", action="store_true")
        shorthand.set_defaults(handler=cmd_region, route=route, all=False)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=sorted(SUITES))
    verify.add_argument("--max-m", type=int, default=3)
    verify.add_argument("--max-k", type=int, default=2)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--workers", type=int, default=None)
    verify.set_defaults(handler=cmd_verify)

    render = sub.add_parser("render", help="SVG of a path family and its lozenge tiling")
    _region_arguments(render)
    render.add_argument("--family", type=int, default=0, help="family index in enumeration order")
    render.add_argument("--tiling", action="store_true", help="lozenges only, no path overlay")
    render.add_argument("--out", default=None, help="output file (stdout if omitted)")
    render.set_defaults(handler=cmd_render)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors and 0 on --help
        return int(e.code or 0)
    try:
        return args.handler(args)
    except QHexError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValidationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
