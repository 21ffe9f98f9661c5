"""Command-line front end.  Every subcommand prints one JSON document on stdout.

Exit codes: 0 success, 1 usage error, 2 a guaranteed property failed,
3 a search or enumeration budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .characterization import DEFAULT_ENUMERATION_BUDGET, verify_characterization
from .construction import ConstructionParams, full_report
from .errors import GraphParseError, ResourceError, UsageError
from .graph import isospectral, max_crosscheck_deviation, parse_graph, spectrum
from .isomorphism import DEFAULT_NODE_BUDGET, Status, decide_isomorphism

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PROPERTY = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circspec", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="exact spectrum of a circulant graph")
    p.add_argument("graph", type=str)

    p = sub.add_parser("isospectral", help="compare two spectra")
    p.add_argument("graph1", type=str)
    p.add_argument("graph2", type=str)

    p = sub.add_parser("isomorphic", help="decide isomorphism")
    p.add_argument("graph1", type=str)
    p.add_argument("graph2", type=str)
    p.add_argument("--budget", type=_positive, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("construct", help="build and verify an isospectral non-isomorphic pair on 2^r p vertices")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--budget", type=_positive, default=None)

    for name, help_text in (
        ("verify-characterization", "check that isospectral implies isomorphic for all size-m connection sets"),
        ("mine", "list isospectral non-isomorphic pairs among all size-m connection sets"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--multisets", action="store_true")
        p.add_argument("--budget", type=_positive, default=DEFAULT_NODE_BUDGET)
        p.add_argument("--enumeration-budget", type=_positive, default=DEFAULT_ENUMERATION_BUDGET)

    p = sub.add_parser("crosscheck", help="compare exact eigenvalues with floating-point evaluation")
    p.add_argument("graph", type=str)
    p.add_argument("--tol", type=float, default=1e-9)
    return parser


def _echo(args: argparse.Namespace) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("command", "pretty"):
            continue
        out[key] = value
    return out


def _run(args: argparse.Namespace) -> tuple[object, int]:
    cmd = args.command
    for name in ("graph", "graph1", "graph2"):
        if hasattr(args, name):
            setattr(args, name, parse_graph(getattr(args, name)))
    if cmd == "spectrum":
        return spectrum(args.graph).to_json(), EXIT_OK
    if cmd == "isospectral":
        return isospectral(args.graph1, args.graph2), EXIT_OK
    if cmd == "isomorphic":
        verdict = decide_isomorphism(args.graph1, args.graph2, args.budget)
        if verdict.status is Status.ISOMORPHIC and not verdict.verify(args.graph1, args.graph2):
            return verdict.to_json(), EXIT_PROPERTY
        code = EXIT_BUDGET if verdict.status is Status.UNKNOWN else EXIT_OK
        return verdict.to_json(), code
    if cmd == "construct":
        report = full_report(ConstructionParams(args.r, args.p, args.q), args.budget)
        result = report.to_json()
        result["violations"] = report.violations()
        if result["violations"]:
            return result, EXIT_PROPERTY
        if report.verdict.status is Status.UNKNOWN:
            return result, EXIT_BUDGET
        return result, EXIT_OK
    if cmd in ("verify-characterization", "mine"):
        report = verify_characterization(args.n, args.m, args.multisets, args.budget, args.enumeration_budget)
        if cmd == "mine":
            result = {
                "counterexamples": report.to_json()["counterexamples"],
                "unknown_pairs": report.to_json()["unknown_pairs"],
            }
        else:
            result = report.to_json()
        if report.violates_criterion():
            return result, EXIT_PROPERTY
        return result, EXIT_BUDGET if report.unknown_pairs else EXIT_OK
    if cmd == "crosscheck":
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        dev = max_crosscheck_deviation(args.graph)
        return {"agrees": dev < args.tol, "max_deviation": dev, "tolerance": args.tol}, (
            EXIT_OK if dev < args.tol else EXIT_PROPERTY
        )
    raise UsageError(f"unknown command {cmd!r}")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        inputs = _echo(args)
        result, code = _run(args)
    except GraphParseError as exc:
        print(f"error: malformed graph: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    envelope = {
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "version": __version__,
        "exact": True,
    }
    print(json.dumps(envelope, sort_keys=True, indent=2 if args.pretty else None))
    if code == EXIT_PROPERTY:
        print("error: property violation", file=sys.stderr)
    elif code == EXIT_BUDGET:
        print("error: budget exhausted before a definite answer", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
