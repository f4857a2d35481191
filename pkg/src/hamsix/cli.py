"""Command line front end.

    hamsix catalog 2a | hamsix verify
    hamsix catalog 1a --params 1,2,3 | hamsix invariants
    hamsix enumerate --max-gap 10 --graph-type 2 --histogram
    hamsix classify data.json

Exit codes: 0 success, 1 failed verification or invariants, 2 malformed input.
Diagnostics go to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .checks import CHECK_ORDER, verify_all
from .classifier import enumerate_data, match_family
from .core import DataFormatError, FixedPointData, from_json, to_json, validate
from .invariants import InvariantError, invariants_report

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _diag(kind: str, message: str, **extra) -> None:
    print(_dump({"error": kind, "message": message, **extra}), file=sys.stderr)


def _read_input(source: str | None, stdin) -> FixedPointData:
    if source is None or source == "-":
        text = stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise DataFormatError(exc.strerror or str(exc), source) from exc
    return from_json(text, check=False)


def _table(rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def cmd_verify(args, data, out) -> int:
    report = verify_all(data)
    if args.format == "table":
        rows = [("check", "result", "witness")]
        for c in report.checks:
            witness = _dump(c.to_dict()["witness"]) if c.witness is not None else ""
            rows.append((c.name, "pass" if c.passed else "FAIL", witness))
        print(_table(rows), file=out)
        print(f"overall: {'pass' if report.overall else 'FAIL'}", file=out)
    else:
        print(report.to_json(), file=out)
    return EXIT_OK if report.overall else EXIT_FAILED


def cmd_invariants(args, data, out) -> int:
    try:
        validate(data)
        report = invariants_report(data)
    except InvariantError as exc:
        print(_dump(exc.to_dict()), file=sys.stderr)
        return EXIT_FAILED
    if args.format == "table":
        ch = report["chern"]
        rows = [("N", report["ring"]["N"]), ("a", report["ring"]["a"]), ("c(M)", ch["c"])]
        rows += [(k, v) for k, v in ch["numbers"].items()]
        rows.append(("localization_checks", report["localization_checks"]))
        print(_table(rows), file=out)
    else:
        print(_dump(report), file=out)
    return EXIT_OK if report["localization_checks"] == "pass" else EXIT_FAILED


def cmd_classify(args, data, out) -> int:
    validate(data)
    match = match_family(data)
    if args.format == "table":
        params = match.parameters if match.parameters else ""
        print(f"{match.family.value}  {params}".rstrip(), file=out)
    else:
        print(_dump(match.to_dict()), file=out)
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    params = ()
    if args.params:
        try:
            params = tuple(int(x) for x in args.params.split(","))
        except ValueError:
            raise DataFormatError(f"cannot parse {args.params!r} as integers", "--params")
    try:
        data = catalog.make(args.family, params)
    except ValueError as exc:
        raise DataFormatError(str(exc), "catalog")
    if args.format == "table":
        rows = [("point", "moment", "weights")]
        rows += [(p.id, p.moment, list(data.weights[p.id])) for p in data.points]
        print(_table(rows), file=out)
    else:
        print(to_json(data), file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    if args.max_gap < 1:
        raise DataFormatError("must be >= 1", "--max-gap")
    types = [args.graph_type] if args.graph_type else None
    result = enumerate_data(args.max_gap, graph_types=types, disable=args.disable or (),
                            jobs=args.jobs)
    if args.format == "table":
        rows = [("type", "gaps", "family", "parameters")]
        for r in result.results:
            rows.append((int(r.graph_type), list(r.data.gaps), r.family.family.value,
                         list(r.family.parameters or ())))
        if len(rows) > 1:
            print(_table(rows), file=out)
        print(_dump({"summary": result.summary(histogram=args.histogram)}), file=out)
    else:
        for r in result.results:
            print(_dump(r.to_dict()), file=out)
        print(_dump({"summary": result.summary(histogram=args.histogram)}), file=out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamsix",
        description="Fixed-point data of Hamiltonian circle actions in dimension 6 with 4 fixed points.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("verify", "run every check and print the report"),
                       ("invariants", "cohomology ring, Chern classes and Chern numbers"),
                       ("classify", "match against the four families")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("input", nargs="?", default="-",
                       help="JSON file, inline JSON, or '-' for stdin (default)")

    p = sub.add_parser("enumerate", parents=[common], help="bounded exhaustive search")
    p.add_argument("--max-gap", type=int, required=True)
    p.add_argument("--graph-type", type=int, choices=(1, 2, 3))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--histogram", action="store_true", help="include the rejection histogram")
    p.add_argument("--disable", action="append", choices=CHECK_ORDER[1:],
                   help=argparse.SUPPRESS)

    p = sub.add_parser("catalog", parents=[common], help="emit data for a known family")
    p.add_argument("family", choices=sorted(catalog.FAMILIES))
    p.add_argument("--params", help="comma separated, e.g. 1,2,3 for 1a or 1,2 for 1b")
    return parser


def main(argv=None, stdin=None, stdout=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    out = sys.stdout if stdout is None else stdout
    args = make_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            return cmd_catalog(args, out)
        if args.command == "enumerate":
            return cmd_enumerate(args, out)
        data = _read_input(args.input, stdin)
        if args.command == "verify":
            return cmd_verify(args, data, out)
        if args.command == "invariants":
            return cmd_invariants(args, data, out)
        return cmd_classify(args, data, out)
    except DataFormatError as exc:
        _diag("DataFormatError", str(exc), location=exc.location)
        return EXIT_BAD_INPUT
    except ValueError as exc:
        # structurally invalid data handed to invariants/classify
        _diag(type(exc).__name__, str(exc), **getattr(exc, "detail", {}))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
