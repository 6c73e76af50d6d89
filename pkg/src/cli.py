"""
Command Line Module
Subcommands: graph, automaton, indices, tutte, verify.

Exit codes: 0 success, 1 usage or domain error, 2 invalid tree or input file,
3 size guard, 4 verification mismatch.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from src.errors import SchreierIndicesError, UsageError, VerificationMismatch
from src.extractor import read_corpus, read_tree_file
from src.formulas import Variant, tutte_evaluate, tutte_factored
from src.loader import ReportWriter
from src.logger_config import get_logger_from_config
from src.mealy import build_automaton, export_moore_dot
from src.pipeline import VerificationPipeline
from src.report import IndicesReport, MODES, json_value, render_report
from src.schreier import build_schreier, export_dot, export_json
from src.settings import Settings, load_settings, with_vertex_cap

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="run_schreier.py",
        description="Schreier graphs of tree automata: generation, closed-form indices and verification",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Examples:
  python run_schreier.py graph --tree data/corpus/p3.txt -n 2 --format json
  python run_schreier.py indices --tree data/corpus/p3.txt -n 1 --mode both
  python run_schreier.py tutte --tree data/corpus/p3.txt -n 2 --eval 1 1
  python run_schreier.py verify --max-vertices 4096 --ledger ledger.csv
        '''
    )
    parser.add_argument('-c', '--config', default='config/config.yaml', help='Path to config file')
    parser.add_argument('--vertex-cap', type=int, default=None,
                        help='Largest k^n a graph may have (overrides config and environment)')
    sub = parser.add_subparsers(dest='command', parser_class=ArgumentParser)
    sub.required = True

    graph = sub.add_parser('graph', help='Emit the n-th Schreier graph')
    graph.add_argument('--tree', required=True, help='Tree edge-list file')
    graph.add_argument('-n', type=int, required=True, help='Level (word length)')
    graph.add_argument('--format', choices=['dot', 'json'], default='dot')
    graph.add_argument('-o', '--output', default=None, help='Output file (default: stdout)')

    automaton = sub.add_parser('automaton', help='Emit the Moore diagram of the tree automaton')
    automaton.add_argument('--tree', required=True)
    automaton.add_argument('--format', choices=['dot'], default='dot')
    automaton.add_argument('-o', '--output', default=None)

    indices = sub.add_parser('indices', help='Compute every index of the n-th Schreier graph')
    indices.add_argument('--tree', required=True)
    indices.add_argument('-n', type=int, required=True)
    indices.add_argument('--mode', choices=MODES, default='both')
    indices.add_argument('--variant', choices=[v.value for v in Variant], default='corrected')

    tutte = sub.add_parser('tutte', help='Factored Tutte polynomial, optionally evaluated')
    tutte.add_argument('--tree', required=True)
    tutte.add_argument('-n', type=int, required=True)
    tutte.add_argument('--eval', nargs=2, metavar=('X', 'Y'), default=None,
                       help='Evaluate at exact rationals, e.g. --eval 2 1 or --eval 1/2 3')
    tutte.add_argument('--variant', choices=[v.value for v in Variant], default='corrected')

    verify = sub.add_parser('verify', help='Run every formula/oracle cross-check on a corpus')
    verify.add_argument('--corpus', default=None, help='Directory of *.txt trees')
    verify.add_argument('--max-vertices', type=int, default=None)
    verify.add_argument('--ledger', default=None, help='Also write the ledger as CSV')
    verify.add_argument('--no-progress', action='store_true', help='Hide the progress bar')

    return parser


def _level(n: int) -> int:
    if n < 1:
        raise UsageError(f"-n must be a positive integer, got {n}")
    return n


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not an exact rational: {text!r}")


def cmd_graph(args, settings: Settings, writer: ReportWriter) -> int:
    tree = read_tree_file(args.tree)
    graph = build_schreier(build_automaton(tree), _level(args.n), vertex_cap=settings.limits.vertex_cap)
    content = export_json(graph) if args.format == 'json' else export_dot(graph)
    writer.emit(content, args.output)
    return EXIT_OK


def cmd_automaton(args, settings: Settings, writer: ReportWriter) -> int:
    tree = read_tree_file(args.tree)
    writer.emit(export_moore_dot(build_automaton(tree)), args.output)
    return EXIT_OK


def cmd_indices(args, settings: Settings, writer: ReportWriter) -> int:
    tree = read_tree_file(args.tree)
    report = IndicesReport(tree, _level(args.n), settings, mode=args.mode, variant=args.variant)
    writer.emit(render_report(report.build()))
    return EXIT_OK


def cmd_tutte(args, settings: Settings, writer: ReportWriter) -> int:
    tree = read_tree_file(args.tree)
    n = _level(args.n)
    budget = settings.limits.bit_budget
    factored = tutte_factored(tree.k, n, args.variant)
    payload = {
        "k": tree.k,
        "n": n,
        "variant": args.variant,
        "tutte": json_value(factored, budget),
    }
    if args.eval is not None:
        x, y = (_rational(v) for v in args.eval)
        payload["x"] = str(x)
        payload["y"] = str(y)
        payload["value"] = json_value(tutte_evaluate(factored, x, y, budget), budget)
    writer.emit(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args, settings: Settings, writer: ReportWriter) -> int:
    if args.max_vertices is not None and args.max_vertices < 1:
        raise UsageError(f"--max-vertices must be positive, got {args.max_vertices}")
    corpus = read_corpus(args.corpus or settings.paths.corpus_dir)
    pipeline = VerificationPipeline(
        corpus, settings, max_vertices=args.max_vertices, show_progress=not args.no_progress
    )
    report = pipeline.run()

    writer.emit_ledger(report.rows)
    writer.emit(report.summary() + "\n")
    if args.ledger:
        writer.write_ledger_csv(report.rows, args.ledger)

    if not report.ok:
        raise VerificationMismatch(f"{report.count('fail')} checks failed")
    return EXIT_OK


COMMANDS = {
    'graph': cmd_graph,
    'automaton': cmd_automaton,
    'indices': cmd_indices,
    'tutte': cmd_tutte,
    'verify': cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Parse argv, run the subcommand and return its exit code."""
    writer = ReportWriter(stdout)
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        get_logger_from_config(args.config)
        settings = load_settings(args.config)
        if args.vertex_cap is not None:
            if args.vertex_cap < 1:
                raise UsageError(f"--vertex-cap must be positive, got {args.vertex_cap}")
            settings = with_vertex_cap(settings, args.vertex_cap)
        return COMMANDS[args.command](args, settings, writer)

    except SchreierIndicesError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
