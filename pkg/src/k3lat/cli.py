"""Command line entry points.

``k3lat check FILE``    evaluate a scenario file, report pass/fail/flagged
``k3lat replay``        run the built-in scenario groups by name
``k3lat calc OP ARGS``  evaluate one scalar operation directly

Exit codes: 0 all assertions hold (flagged mismatches only warn), 1 at
least one assertion failed, 2 the input could not be parsed or resolved.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import K3LatError, ScenarioError
from .replay import REPLAYS, replay_names, run_replay
from .report import Report, emit_text, json_payload
from .scenario import OPERATIONS, run_scenario


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="report format (default: text)")
    parser.add_argument("--max-degree", type=int, default=None, metavar="N",
                        help="cap the degree window of every search; recorded "
                        "in the report")
    parser.add_argument("--omit-timing", action="store_true",
                        help="drop wall times so identical runs emit identical "
                        "bytes")


def _emit_reports(reports: list[Report], fmt: str, include_timing: bool) -> int:
    if fmt == "json":
        payloads = [json_payload(r, include_timing) for r in reports]
        body = payloads[0] if len(payloads) == 1 else payloads
        sys.stdout.write(json.dumps(body, sort_keys=True, indent=2) + "\n")
    else:
        for i, report in enumerate(reports):
            if i:
                sys.stdout.write("\n")
            sys.stdout.write(emit_text(report, include_timing))
    worst = 0
    for report in reports:
        for warning in report.warnings():
            sys.stderr.write(warning + "\n")
        worst = max(worst, report.exit_code)
    return worst


def _calc_value(kind: str, token: str, operation: str):
    if kind == "int":
        try:
            return int(token)
        except ValueError:
            raise ScenarioError(f"{operation}: expected an integer, got {token!r}", 0, 0)
    if kind == "ints":
        body = token.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        try:
            return [int(piece) for piece in body.split(",") if piece.strip()]
        except ValueError:
            raise ScenarioError(f"{operation}: expected a list like 1,2,3", 0, 0)
    if kind == "str":
        return token.strip('"')
    raise ScenarioError(f"{operation} needs a declared {kind}; use a scenario file", 0, 0)


def _run_calc(operation: str, tokens: list[str]) -> int:
    if operation == "list":
        for name, spec in sorted(OPERATIONS.items()):
            if all(kind in ("int", "ints", "str") for kind in spec.params):
                params = " ".join(spec.params) or "(no arguments)"
                sys.stdout.write(f"{name} {params}\n    {spec.summary}\n")
        return 0
    if operation not in OPERATIONS:
        sys.stderr.write(f"unknown operation {operation!r}; try 'k3lat calc list'\n")
        return 2
    spec = OPERATIONS[operation]
    if any(kind not in ("int", "ints", "str") for kind in spec.params):
        sys.stderr.write(f"{operation} needs declared lattice objects; "
                         "use a scenario file\n")
        return 2
    if len(tokens) != len(spec.params):
        sys.stderr.write(f"{operation} takes {len(spec.params)} argument(s): "
                         f"{' '.join(spec.params)}\n")
        return 2
    values = [_calc_value(kind, token, operation)
              for kind, token in zip(spec.params, tokens)]
    result, certificate = spec.func(*values)
    sys.stdout.write(json.dumps(result) + "\n")
    if certificate:
        sys.stderr.write(certificate + "\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="k3lat",
        description="exact lattice checks for polarized K3 surfaces: "
        "effectivity, nefness, embeddings, curve configurations")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="evaluate a scenario file")
    check.add_argument("file", help="path to a scenario file")
    _add_output_options(check)

    replay = sub.add_parser("replay", help="run built-in scenario groups")
    replay.add_argument("--lemma", default="all", metavar="NAME",
                        help="which group to run (default: all)")
    replay.add_argument("--list", action="store_true",
                        help="list the available groups and exit")
    _add_output_options(replay)

    calc = sub.add_parser("calc", help="evaluate one scalar operation")
    calc.add_argument("operation", help="operation name, or 'list'")
    calc.add_argument("args", nargs="*", help="integer / list / string arguments")

    options = parser.parse_args(argv)

    try:
        if options.command == "check":
            report = run_scenario(options.file, max_degree=options.max_degree)
            return _emit_reports([report], options.format, not options.omit_timing)
        if options.command == "replay":
            if options.list:
                for name in replay_names():
                    sys.stdout.write(f"{name}\n    {REPLAYS[name][0]}\n")
                return 0
            reports = run_replay(options.lemma, max_degree=options.max_degree)
            return _emit_reports(reports, options.format, not options.omit_timing)
        if options.command == "calc":
            return _run_calc(options.operation, options.args)
    except ScenarioError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    except OSError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    except K3LatError as err:
        sys.stderr.write(f"error: {type(err).__name__}: {err}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
