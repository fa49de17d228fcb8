#!/usr/bin/env python3
"""
archdia command-line interface
Check, synthesize, count, conform and export architecture diagrams
"""

import argparse
import dataclasses
import logging
import sys
import traceback
from enum import IntEnum
from pathlib import Path
from typing import Dict, List, Optional

from src.analysis.consistency import ConsistencyReport, check_consistency
from src.analysis.regular_configs import build_incidence, enumerate_regular, enumerate_supports, format_regular_table
from src.conformance.checker import verify
from src.dsl.exporters import architecture_to_json, diagram_to_json, export_dot
from src.dsl.parser import (
    load_architecture,
    load_diagram,
    parse_connector_literal,
    parse_interval_literal,
)
from src.dsl.printer import print_architecture
from src.model.errors import ArchdiaError, DiagramValidationError, OracleLimitError
from src.model.types import Architecture, Diagram, TypedInterval, SC
from src.oracle.brute_force import brute_force
from src.synthesis.architectures import count_configs, enumerate_diagram
from src.synthesis.fusion import SynthesisConstraints
from src.utils.config import get_settings
from src.utils.export_utils import to_json_text
from src.utils.logging_setup import configure_logging

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    FALSE = 1
    USAGE = 2
    LIMIT = 3


def _cardinality_arg(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name or not value.isdigit():
        raise argparse.ArgumentTypeError(f"expected TYPE=n, got {text!r}")
    return name.strip(), int(value)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _consistency_lines(d: Diagram, report: ConsistencyReport) -> List[str]:
    if report.consistent:
        witness = report.witness
        cards = ", ".join(f"{name}={n}" for name, n in witness.cardinalities.items())
        lines = ["consistent: yes", f"  cardinalities: {cards}"]
        for motif_witness in witness.motifs:
            choices = ", ".join(f"{c.port} {c.multiplicity}:{c.degree}" for c in motif_witness.choices)
            lines.append(f"  {d.motif_label(motif_witness.motif)}: s={motif_witness.matching_factor} ({choices})")
        return lines
    diagnosis = report.diagnosis
    return [
        "consistent: no",
        f"  {d.motif_label(diagnosis.motif)}: {diagnosis.condition}: {diagnosis.message}",
    ]


def cmd_check(args) -> int:
    """Validate a diagram and decide its consistency"""
    try:
        d = load_diagram(args.diagram)
    except DiagramValidationError as e:
        if args.json:
            _emit(to_json_text({'diagram': None, 'error': str(e), 'validation': e.report.to_dict()}))
        else:
            print(f"error: {e}", file=sys.stderr)
        return ExitCode.USAGE

    report = check_consistency(d)
    if args.json:
        _emit(to_json_text({
            'diagram': d.name,
            'validation': {'ok': True, 'violations': []},
            'consistency': report.to_dict(),
        }))
    else:
        _emit("\n".join([f"diagram {d.name}: valid"] + _consistency_lines(d, report)))
    return ExitCode.OK if report.consistent else ExitCode.FALSE


def _constraints(args) -> SynthesisConstraints:
    required = [parse_connector_literal(text) for text in args.require or []]
    forbidden = [parse_connector_literal(text) for text in args.forbid or []]
    cardinalities: Optional[Dict[str, int]] = dict(args.cardinality) if args.cardinality else None
    return SynthesisConstraints(
        frozenset(c for c in required if c is not None),
        frozenset(c for c in forbidden if c is not None),
        cardinalities,
    )


def _oracle_architectures(d: Diagram, cons: SynthesisConstraints) -> List[Architecture]:
    found = brute_force(d, cons.cardinalities)
    return [
        a for a in found
        if cons.required <= a.configuration and not cons.forbidden & a.configuration
    ]


def _render(architectures: List[Architecture], fmt: str) -> str:
    if fmt == "json":
        return to_json_text([architecture_to_json(a) for a in architectures])
    if fmt == "dot":
        return "\n".join(export_dot(a) for a in architectures)
    return "\n".join(print_architecture(a) for a in architectures)


def cmd_synth(args) -> int:
    """Enumerate conforming architectures (or count them)"""
    d = load_diagram(args.diagram)
    cons = _constraints(args)
    if args.count:
        return _report_count(d, cons, args)

    architectures = _oracle_architectures(d, cons) if args.oracle else enumerate_diagram(d, cons)
    total = len(architectures)
    if args.limit is not None:
        architectures = architectures[:args.limit]
    architectures = [
        dataclasses.replace(a, name=f"{d.name}_{k}") for k, a in enumerate(architectures, start=1)
    ]
    logger.info(f"Emitting {len(architectures)} of {total} architectures")
    if architectures:
        _emit(_render(architectures, args.out))
    else:
        print(f"no architecture conforms to {d.name} under the given constraints", file=sys.stderr)
    return ExitCode.OK if total else ExitCode.FALSE


def _report_count(d: Diagram, cons: SynthesisConstraints, args) -> int:
    total = len(_oracle_architectures(d, cons)) if args.oracle else count_configs(d, cons)
    if args.json:
        _emit(to_json_text({'diagram': d.name, 'count': total}))
    else:
        _emit(str(total))
    return ExitCode.OK if total else ExitCode.FALSE


def cmd_count(args) -> int:
    """Count conforming architectures"""
    return _report_count(load_diagram(args.diagram), _constraints(args), args)


def cmd_conform(args) -> int:
    """Check an architecture against a diagram"""
    d = load_diagram(args.diagram)
    a = load_architecture(args.architecture, d)
    verdict = verify(a, d)
    if args.json:
        _emit(to_json_text({'architecture': a.name, 'diagram': d.name, **verdict.to_dict(d)}))
    elif verdict.conforms:
        lines = [f"{a.name} conforms to {d.name} ({verdict.strategy})"]
        for index, connectors in sorted(verdict.partition.items()):
            members = " ".join(f"{{{c}}}" for c in sorted(connectors, key=lambda c: c.sort_key))
            lines.append(f"  {d.motif_label(index)}: {members}")
        _emit("\n".join(lines))
    else:
        failure = verdict.failure
        _emit(f"{a.name} does not conform to {d.name}\n  stage {failure.stage}: {failure.message}")
    return ExitCode.OK if verdict.conforms else ExitCode.FALSE


def cmd_export(args) -> int:
    """Render a diagram or an architecture as DOT (default) or JSON"""
    path = Path(args.file)
    if path.suffix == ".archa":
        if not args.diagram:
            print("error: exporting an architecture needs --diagram", file=sys.stderr)
            return ExitCode.USAGE
        model = load_architecture(path, load_diagram(args.diagram))
        data = architecture_to_json(model) if args.json else None
    else:
        model = load_diagram(path)
        data = diagram_to_json(model) if args.json else None
    _emit(to_json_text(data) if args.json else export_dot(model))
    return ExitCode.OK


def cmd_regular(args) -> int:
    """Print the regular configurations of one generic port"""
    mult: TypedInterval = parse_interval_literal(args.multiplicity)
    deg: TypedInterval = parse_interval_literal(args.degree)
    configs = enumerate_regular(args.n, mult, deg)
    if args.json:
        _emit(to_json_text({
            'n': args.n,
            'multiplicity': str(mult),
            'degree': str(deg),
            'configurations': [
                {'x': list(c.x), 'supports': [list(s) for s in c.supports.supports], 'degrees': list(c.degrees)}
                for c in configs
            ],
        }))
        return ExitCode.OK if configs else ExitCode.FALSE
    sizes = [TypedInterval.exact(m) for m in mult.values()] if mult.kind == SC else [mult]
    lines = []
    for size in sizes:
        matrix = build_incidence(args.n, enumerate_supports(args.n, size))
        lines.append(f"multiplicity {size}: G is {matrix.shape[0]}x{matrix.shape[1]}")
        lines.extend(f"  {equation}" for equation in matrix.equations())
    lines.extend(format_regular_table(configs))
    lines.append(f"{len(configs)} regular configurations")
    _emit("\n".join(lines))
    return ExitCode.OK if configs else ExitCode.FALSE


def _add_synthesis_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--cardinality", action="append", type=_cardinality_arg, metavar="T=n",
                        help="Fix the number of instances of a type")
    parser.add_argument("--require", action="append", metavar="CONN",
                        help="Connector that must appear, e.g. 'T#1.p,S#2.q'")
    parser.add_argument("--forbid", action="append", metavar="CONN", help="Connector that must not appear")
    parser.add_argument("--oracle", action="store_true", help="Use the brute-force oracle instead of synthesis")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    common.add_argument("--json", action="store_true", help="Machine-readable output")

    parser = argparse.ArgumentParser(
        prog="archdia", description="Architecture diagrams: consistency, synthesis and conformance"
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # check subcommand
    parser_check = subparsers.add_parser("check", parents=[common], help="Validate a diagram and decide consistency")
    parser_check.add_argument("diagram", help=".archd file")
    parser_check.set_defaults(func=cmd_check)

    # synth subcommand
    parser_synth = subparsers.add_parser("synth", parents=[common], help="Enumerate conforming architectures")
    parser_synth.add_argument("diagram", help=".archd file")
    _add_synthesis_flags(parser_synth)
    parser_synth.add_argument("--limit", type=int, metavar="K", help="Emit at most K architectures")
    parser_synth.add_argument("--count", action="store_true", help="Only print the number of architectures")
    parser_synth.add_argument("--out", choices=["json", "archa", "dot"], default="archa", help="Output format")
    parser_synth.set_defaults(func=cmd_synth)

    # count subcommand
    parser_count = subparsers.add_parser("count", parents=[common], help="Count conforming architectures")
    parser_count.add_argument("diagram", help=".archd file")
    _add_synthesis_flags(parser_count)
    parser_count.set_defaults(func=cmd_count)

    # conform subcommand
    parser_conform = subparsers.add_parser("conform", parents=[common], help="Check an architecture against a diagram")
    parser_conform.add_argument("architecture", help=".archa file")
    parser_conform.add_argument("diagram", help=".archd file")
    parser_conform.set_defaults(func=cmd_conform)

    # export subcommand
    parser_export = subparsers.add_parser("export", parents=[common], help="Export a diagram or architecture")
    parser_export.add_argument("file", help=".archd or .archa file")
    parser_export.add_argument("--dot", action="store_true", help="DOT output (the default)")
    parser_export.add_argument("--diagram", help="Diagram resolving an .archa file")
    parser_export.set_defaults(func=cmd_export)

    # regular subcommand
    parser_regular = subparsers.add_parser("regular", parents=[common], help="Regular configurations of one generic port")
    parser_regular.add_argument("n", type=int, help="Number of port instances")
    parser_regular.add_argument("multiplicity", help="k, sc[a,b] or mc[a,b]")
    parser_regular.add_argument("degree", help="k, sc[a,b] or mc[a,b]")
    parser_regular.set_defaults(func=cmd_regular)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging("INFO" if getattr(args, "verbose", False) else get_settings().log_level)

    if not args.command:
        parser.print_help()
        return ExitCode.USAGE

    try:
        return int(args.func(args))
    except OracleLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.LIMIT
    except (ArchdiaError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.USAGE
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        logger.error(traceback.format_exc())
        return ExitCode.USAGE


if __name__ == "__main__":
    sys.exit(main())
