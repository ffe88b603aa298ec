"""Command line entry point: ``flowgraphs analyze|validate|render``.

Exit status is 0 on success/pass, 1 when a validation fails, 2 on usage,
I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FlowgraphError
from .flowgraph import export_dot, export_json
from .frontend import load_source_file
from .harness import load_expectation, run_pipeline, validate
from .render import render
from .source import Method, Statement, walk


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--implicit-exit-fallthrough", action="store_true", default=argparse.SUPPRESS,
                        help="link a final statement without successor to the method exit")
    common.add_argument("--keep-vars", action="store_true", default=argparse.SUPPRESS,
                        help="keep Var/Param nodes after data flow analysis")

    parser = argparse.ArgumentParser(prog="flowgraphs", parents=[common],
                                     description="Control and data flow graphs for a Java subset.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", parents=[common], help="run the pipeline and export the graph")
    analyze.add_argument("input", type=Path)
    analyze.add_argument("--stage", choices=["struct", "cf", "df"], default="df")
    analyze.add_argument("--emit", choices=["json", "dot"], default="json")
    analyze.add_argument("-o", "--output", type=Path)

    val = sub.add_parser("validate", parents=[common], help="check results against an expectation file")
    val.add_argument("spec", type=Path)
    val.add_argument("--json-report", action="store_true")

    rnd = sub.add_parser("render", parents=[common], help="print the rendered text of every statement")
    rnd.add_argument("input", type=Path)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    fallthrough = getattr(args, "implicit_exit_fallthrough", False)
    keep_vars = getattr(args, "keep_vars", False)
    try:
        if args.command == "analyze":
            graph = run_pipeline(args.input, args.stage, implicit_exit_fallthrough=fallthrough,
                                 keep_vars=keep_vars)
            text = export_dot(graph) if args.emit == "dot" else export_json(graph) + "\n"
            if args.output:
                args.output.write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
            return 0
        if args.command == "validate":
            report = validate(load_expectation(args.spec), implicit_exit_fallthrough=fallthrough)
            if args.json_report:
                print(json.dumps(report.to_dict(), indent=1))
            else:
                print(report.format())
            return report.exit_code
        if args.command == "render":
            for m in load_source_file(args.input):
                for node in walk(m):
                    if isinstance(node, (Method, Statement)):
                        print(render(node))
            return 0
    except (FlowgraphError, OSError, UnicodeDecodeError) as exc:
        print(f"flowgraphs: error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
