"""Command line front end: one subcommand per tool.

Inputs may be compiler AST JSON (loaded directly) or ``.sol`` source, which
is compiled on the fly when a Solidity compiler is reachable.  Every
subcommand honours ``--format structured`` for machine-readable JSON output
in the shape documented by ``docs/report-schema.json``.

Exit codes: 0 on success, 1 when a tool fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from .analyses import (
    ast_diff,
    build_call_graph,
    build_cfg,
    count_loops,
    graph_to_dot,
    list_functions,
)
from .codegen import emit_source
from .errors import SolsiftError
from .ingest import compile_source, load_ast_file
from .nodes import SourceUnit
from .transforms import (
    GUARD_CLASSES,
    VULNERABILITIES,
    insert_assertions,
    make_signed,
    rename,
    seed_fault,
)


def _load(path_text: str) -> SourceUnit:
    path = Path(path_text)
    if path.suffix == ".sol":
        return compile_source(path)
    return load_ast_file(path)


def _print_output(
    args: argparse.Namespace, tool: str, data: dict[str, Any], lines: Sequence[str]
) -> None:
    if args.format == "structured":
        envelope = {"tool": tool, "input": getattr(args, "input", None), "data": data}
        print(json.dumps(envelope, indent=2))
    else:
        for line in lines:
            print(line)


def _write_result(args: argparse.Namespace, unit: SourceUnit) -> Optional[str]:
    """Handle -o/--no-emit for commands that produce a rewritten unit.

    Returns the output path when a file was written; with no -o the source
    goes to stdout in text mode (structured mode embeds it instead).
    """
    if args.no_emit:
        return None
    source = emit_source(unit)
    if args.output:
        Path(args.output).write_text(source, encoding="utf-8")
        return args.output
    if args.format == "text":
        sys.stdout.write(source)
    return None


# -- corpus harness ------------------------------------------------------------


@dataclass
class CorpusEntry:
    fixture: str
    status: str
    milliseconds: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"


@dataclass
class CorpusReport:
    directory: str
    entries: list[CorpusEntry] = field(default_factory=list)
    duration_seconds: float = 0.0

    @property
    def passed(self) -> int:
        return sum(1 for entry in self.entries if entry.ok)

    @property
    def failed(self) -> int:
        return len(self.entries) - self.passed


def _golden_for(fixture: Path) -> Path:
    stem = fixture.name
    for suffix in (".ast.json", ".json"):
        if stem.endswith(suffix):
            stem = stem[: -len(suffix)]
            break
    return fixture.parent / (stem + ".sol")


def _first_difference(actual: str, expected: str) -> str:
    for number, (got, want) in enumerate(
        zip(actual.splitlines(), expected.splitlines()), start=1
    ):
        if got != want:
            return f"line {number}: {got!r} != {want!r}"
    return (
        f"line count {len(actual.splitlines())} != {len(expected.splitlines())}"
    )


def _check_fixture(fixture: Path, with_compiler: bool) -> CorpusEntry:
    started = time.perf_counter()

    def finish(status: str, detail: str = "") -> CorpusEntry:
        elapsed = (time.perf_counter() - started) * 1000
        return CorpusEntry(fixture.name, status, elapsed, detail)

    try:
        unit = load_ast_file(fixture)
        emitted = emit_source(unit)
        golden = _golden_for(fixture)
        if not golden.exists():
            return finish("fail", "missing golden source file")
        expected = golden.read_text(encoding="utf-8")
        if emitted != expected:
            return finish("fail", _first_difference(emitted, expected))
        if with_compiler:
            # Full loop through the real compiler: regenerated source must
            # compile and produce a tree that regenerates identically.
            with tempfile.NamedTemporaryFile(
                "w", suffix=".sol", delete=False, encoding="utf-8"
            ) as handle:
                handle.write(emitted)
                temp_path = Path(handle.name)
            try:
                again = emit_source(compile_source(temp_path))
            finally:
                temp_path.unlink(missing_ok=True)
            if again != emitted:
                return finish("fail", "not a fixed point through the compiler")
        return finish("pass")
    except Exception as exc:
        return finish("error", str(exc))


def run_corpus(
    directory: str | Path,
    with_compiler: bool = False,
    workers: Optional[int] = None,
    report_dir: Optional[str | Path] = None,
) -> CorpusReport:
    """Round-trip every ``*.ast.json`` fixture against its golden source."""
    directory = Path(directory)
    fixtures = sorted(directory.glob("*.ast.json")) or sorted(
        p for p in directory.glob("*.json") if not p.name.endswith(".ast.json")
    )
    started = time.perf_counter()
    report = CorpusReport(directory=str(directory))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            report.entries = list(
                pool.map(lambda f: _check_fixture(f, with_compiler), fixtures)
            )
    else:
        report.entries = [_check_fixture(f, with_compiler) for f in fixtures]
    report.duration_seconds = time.perf_counter() - started
    if report_dir is not None:
        _write_corpus_report(report, Path(report_dir))
    return report


def _write_corpus_report(report: CorpusReport, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / "corpus_report.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["fixture", "status", "milliseconds", "detail"])
        for entry in report.entries:
            writer.writerow(
                [entry.fixture, entry.status, f"{entry.milliseconds:.2f}", entry.detail]
            )
    from . import figures

    figures.render_corpus_times(
        [entry.fixture for entry in report.entries],
        [entry.milliseconds for entry in report.entries],
        out_dir / "corpus_times.png",
    )
    figures.render_corpus_status(
        report.passed, report.failed, out_dir / "corpus_status.png"
    )


# -- subcommand handlers ---------------------------------------------------------


def _cmd_functions(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    summaries = list_functions(unit)
    data = {
        "functions": [
            {
                "contract": s.contract,
                "name": s.name,
                "parameters": list(s.parameters),
                "returns": list(s.returns),
                "rendered": s.rendered,
            }
            for s in summaries
        ]
    }
    _print_output(args, "functions", data, [s.rendered for s in summaries])
    return 0


def _cmd_callgraph(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    graph = build_call_graph(unit)
    dot = graph_to_dot(graph)
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
    if args.figure:
        from . import figures

        figures.render_call_graph(graph, args.figure)
    lines = [f"node {name}" for name in graph.nodes]
    lines += [f"edge {source} -> {target}" for source, target in graph.edges]
    data = {
        "nodes": graph.nodes,
        "edges": [{"from": s, "to": t} for s, t in graph.edges],
        "dot": dot,
    }
    _print_output(args, "callgraph", data, lines)
    return 0


def _cmd_cfg(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    cfg = build_cfg(unit, args.function, semantic_returns=args.semantic_returns)
    dot = graph_to_dot(cfg)
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
    if args.figure:
        from . import figures

        figures.render_cfg(cfg, args.figure)
    lines = [f"function {cfg.function}"]
    for block in cfg.blocks:
        suffix = " (unreachable)" if block.unreachable else ""
        preview = "; ".join(s.text for s in block.statements)
        lines.append(f"{block.name}{suffix}: {preview}")
    for edge in cfg.edges:
        label = f" [{edge.label}]" if edge.label else ""
        lines.append(f"B{edge.source} -> B{edge.target}{label}")
    data = {
        "function": cfg.function,
        "blocks": [
            {
                "name": block.name,
                "statements": [
                    {"id": s.node_id, "text": s.text} for s in block.statements
                ],
                "unreachable": block.unreachable,
            }
            for block in cfg.blocks
        ],
        "edges": [
            {"from": f"B{e.source}", "to": f"B{e.target}", "label": e.label}
            for e in cfg.edges
        ],
        "dot": dot,
    }
    _print_output(args, "cfg", data, lines)
    return 0


def _cmd_diff(args: argparse.Namespace) -> int:
    left = _load(args.left)
    right = _load(args.right)
    differences = ast_diff(left, right)
    lines = [str(d) for d in differences]
    if not differences:
        lines = ["trees are structurally identical"]
    data = {
        "differences": [
            {"path": list(d.path), "category": d.category, "detail": d.detail}
            for d in differences
        ],
        "count": len(differences),
    }
    args.input = args.left
    _print_output(args, "diff", data, lines)
    return 0


def _cmd_rename(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    renamed, changed = rename(unit, args.kind, args.old, args.new)
    output = _write_result(args, renamed)
    data = {
        "kind": args.kind,
        "old": args.old,
        "new": args.new,
        "changed": changed,
        "output": output,
    }
    if args.format == "structured" and not output and not args.no_emit:
        data["source"] = emit_source(renamed)
    _print_output(
        args,
        "rename",
        data,
        [f"renamed {changed} nodes ({args.kind} {args.old} -> {args.new})"]
        if args.output or args.no_emit
        else [],
    )
    return 0


def _cmd_seed(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    result = seed_fault(unit, args.vuln, function=args.function)
    output = _write_result(args, result.unit)
    data = {
        "vulnerability": result.vulnerability,
        "function": result.function,
        "statement_ids": list(result.statement_ids),
        "output": output,
    }
    if args.format == "structured" and not output and not args.no_emit:
        data["source"] = emit_source(result.unit)
    _print_output(
        args,
        "seed",
        data,
        [f"seeded {result.vulnerability} into {result.function}"]
        if args.output or args.no_emit
        else [],
    )
    return 0


def _cmd_assert(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    only = None
    if args.only:
        only = {name.strip() for name in args.only.split(",") if name.strip()}
    report = insert_assertions(unit, only=only)
    output = _write_result(args, report.unit)
    lines = []
    for site in report.sites:
        if site.action == "guarded":
            lines.append(
                f"guarded {site.function} statement {site.statement_id} "
                f"({site.operator}, {site.signedness or 'n/a'}): "
                + " ".join(site.guards)
            )
        else:
            lines.append(
                f"skipped {site.function} statement {site.statement_id} "
                f"({site.operator}): {site.reason}"
            )
    lines.append(f"guarded {report.guarded} sites, skipped {report.skipped}")
    data = {
        "sites": [
            {
                "function": site.function,
                "statement_id": site.statement_id,
                "operator": site.operator,
                "signedness": site.signedness,
                "action": site.action,
                "reason": site.reason,
                "guards": list(site.guards),
            }
            for site in report.sites
        ],
        "guarded": report.guarded,
        "skipped": report.skipped,
        "output": output,
    }
    if args.format == "structured" and not output and not args.no_emit:
        data["source"] = emit_source(report.unit)
    _print_output(
        args, "assert", data, lines if args.output or args.no_emit else []
    )
    return 0


def _cmd_loops(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    census = count_loops(unit)
    lines = [
        f"while: {census.whiles}",
        f"do-while: {census.do_whiles}",
        f"for: {census.fors}",
        f"total: {census.total}",
    ]
    lines += [f"{name}: {count}" for name, count in census.by_function]
    data = {
        "whiles": census.whiles,
        "do_whiles": census.do_whiles,
        "fors": census.fors,
        "total": census.total,
        "by_function": [
            {"function": name, "count": count} for name, count in census.by_function
        ],
    }
    _print_output(args, "loops", data, lines)
    return 0


def _cmd_make_signed(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    signed, changed = make_signed(unit)
    output = _write_result(args, signed)
    data = {"changed": changed, "output": output}
    if args.format == "structured" and not output and not args.no_emit:
        data["source"] = emit_source(signed)
    _print_output(
        args,
        "make-signed",
        data,
        [f"rewrote {changed} unsigned types"] if args.output or args.no_emit else [],
    )
    return 0


def _cmd_regen(args: argparse.Namespace) -> int:
    unit = _load(args.input)
    output = _write_result(args, unit)
    data = {"output": output}
    if args.format == "structured" and not output and not args.no_emit:
        data["source"] = emit_source(unit)
    _print_output(
        args,
        "regen",
        data,
        [f"wrote {output}"] if output else [],
    )
    return 0


def _cmd_corpus(args: argparse.Namespace) -> int:
    report = run_corpus(
        args.directory,
        with_compiler=args.with_compiler,
        workers=args.workers,
        report_dir=args.report_dir,
    )
    if not report.entries:
        print(f"warning: no fixtures found in {args.directory}", file=sys.stderr)
        return 0
    lines = []
    for entry in report.entries:
        tag = "PASS" if entry.ok else "FAIL"
        detail = f" {entry.detail}" if entry.detail else ""
        lines.append(f"{tag} {entry.fixture} ({entry.milliseconds:.1f} ms){detail}")
    lines.append(
        f"{len(report.entries)} fixtures: {report.passed} passed, "
        f"{report.failed} failed in {report.duration_seconds:.2f}s"
    )
    data = {
        "directory": report.directory,
        "total": len(report.entries),
        "passed": report.passed,
        "failed": report.failed,
        "duration_seconds": report.duration_seconds,
        "results": [
            {
                "fixture": entry.fixture,
                "status": entry.status,
                "milliseconds": entry.milliseconds,
                "detail": entry.detail,
            }
            for entry in report.entries
        ],
    }
    args.input = args.directory
    _print_output(args, "corpus", data, lines)
    return 0 if report.failed == 0 else 1


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solsift",
        description="Query, instrument and regenerate Solidity contracts "
        "from compiler AST output.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="output style: human text or JSON (default: text)",
    )
    writer = argparse.ArgumentParser(add_help=False)
    writer.add_argument("-o", "--output", help="write regenerated source here")
    writer.add_argument(
        "--no-emit",
        action="store_true",
        help="suppress regenerated source, report only",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("functions", parents=[common], help="list function signatures")
    p.add_argument("input")
    p.set_defaults(handler=_cmd_functions)

    p = sub.add_parser("callgraph", parents=[common], help="build the call graph")
    p.add_argument("input")
    p.add_argument("--dot", help="write Graphviz text here")
    p.add_argument("--figure", help="render a PNG here")
    p.set_defaults(handler=_cmd_callgraph)

    p = sub.add_parser("cfg", parents=[common], help="build one function's control flow graph")
    p.add_argument("input")
    p.add_argument("--function", required=True, help="name or Contract.name")
    p.add_argument("--dot", help="write Graphviz text here")
    p.add_argument("--figure", help="render a PNG here")
    p.add_argument(
        "--semantic-returns",
        action="store_true",
        help="wire return statements to a synthetic exit block",
    )
    p.set_defaults(handler=_cmd_cfg)

    p = sub.add_parser("diff", parents=[common], help="compare two trees structurally")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_diff)

    p = sub.add_parser("rename", parents=[common, writer], help="rename a declaration and its uses")
    p.add_argument("input")
    p.add_argument(
        "--kind",
        required=True,
        choices=("contract", "function", "modifier", "event", "struct", "enum", "variable"),
    )
    p.add_argument("--old", required=True)
    p.add_argument("--new", required=True)
    p.set_defaults(handler=_cmd_rename)

    p = sub.add_parser("seed", parents=[common, writer], help="plant an arithmetic fault")
    p.add_argument("input")
    p.add_argument("--vuln", required=True, choices=VULNERABILITIES)
    p.add_argument("--function", help="target function (default: first with a body)")
    p.set_defaults(handler=_cmd_seed)

    p = sub.add_parser("assert", parents=[common, writer], help="guard arithmetic statements")
    p.add_argument("input")
    p.add_argument(
        "--only",
        help=f"comma-separated guard classes ({', '.join(GUARD_CLASSES)})",
    )
    p.set_defaults(handler=_cmd_assert)

    p = sub.add_parser("loops", parents=[common], help="count loop statements")
    p.add_argument("input")
    p.set_defaults(handler=_cmd_loops)

    p = sub.add_parser("make-signed", parents=[common, writer], help="turn unsigned integer types signed")
    p.add_argument("input")
    p.set_defaults(handler=_cmd_make_signed)

    p = sub.add_parser("regen", parents=[common, writer], help="regenerate Solidity source")
    p.add_argument("input")
    p.set_defaults(handler=_cmd_regen)

    p = sub.add_parser("corpus", parents=[common], help="round-trip a fixture directory")
    p.add_argument("directory")
    p.add_argument(
        "--with-compiler",
        action="store_true",
        help="also round trip regenerated source through the compiler",
    )
    p.add_argument("--workers", type=int, help="parallel workers (default: sequential)")
    p.add_argument("--report-dir", help="write CSV and chart files here")
    p.set_defaults(handler=_cmd_corpus)
    return parser


def dispatch(args: argparse.Namespace) -> int:
    return int(args.handler(args))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return dispatch(args)
    except SolsiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
