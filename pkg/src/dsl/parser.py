"""
Parsers for diagram and architecture files
Builds validated model values from lark parse trees; every error carries a SourceSpan
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from lark import Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from src.dsl.grammar import architecture_parser, diagram_parser
from src.model.errors import DiagramValidationError, ParseError, SourceSpan
from src.model.types import (
    Architecture,
    Component,
    ComponentType,
    Connector,
    ConnectorMotif,
    Diagram,
    GenericPortRef,
    Interval,
    PortConstraint,
    PortInstance,
    TypedInterval,
)
from src.model.validation import validate_diagram

logger = logging.getLogger(__name__)


def _span(item, filename: str) -> SourceSpan:
    if isinstance(item, Token):
        return SourceSpan(filename, item.line, item.column)
    meta = item.meta
    if getattr(meta, "empty", True):
        return SourceSpan(filename, 1, 1)
    return SourceSpan(filename, meta.line, meta.column)


def _parse_tree(parser, text: str, filename: str) -> Tree:
    try:
        return parser.parse(text)
    except UnexpectedEOF as e:
        raise ParseError(f"unexpected end of input, expected one of {sorted(e.expected)}",
                         SourceSpan(filename, max(text.count("\n") + 1, 1), 1)) from None
    except UnexpectedToken as e:
        span = SourceSpan(filename, e.line, e.column)
        if e.token.type == "$END":
            raise ParseError("unexpected end of input", span) from None
        raise ParseError(f"unexpected {e.token.value!r}, expected one of {sorted(e.expected)}", span) from None
    except UnexpectedCharacters as e:
        raise ParseError(f"unexpected character {e.char!r}", SourceSpan(filename, e.line, e.column)) from None
    except UnexpectedInput as e:
        raise ParseError(str(e), SourceSpan(filename, getattr(e, "line", 1), getattr(e, "column", 1))) from None


def _interval_bounds(lo_token: Token, hi_token: Token, filename: str) -> Tuple[int, int]:
    lo, hi = int(lo_token), int(hi_token)
    if lo > hi:
        raise ParseError("interval lo > hi", _span(lo_token, filename))
    return lo, hi


def _build_cardinality(tree: Tree, filename: str) -> Interval:
    if tree.data == "card_exact":
        return Interval.exact(int(tree.children[0]))
    return Interval(*_interval_bounds(tree.children[0], tree.children[1], filename))


def _build_typed_interval(tree: Tree, filename: str) -> TypedInterval:
    if tree.data == "ivl_exact":
        return TypedInterval.exact(int(tree.children[0]))
    kind, lo_token, hi_token = tree.children
    lo, hi = _interval_bounds(lo_token, hi_token, filename)
    return TypedInterval(str(kind), lo, hi)


def _build_motif(tree: Tree, filename: str) -> ConnectorMotif:
    if not tree.children:
        raise ParseError("motif must name at least one port", _span(tree, filename))
    constraints = []
    seen = set()
    for port_spec in tree.children[0].children:
        type_name, port_name, mult_tree, deg_tree = port_spec.children
        port = GenericPortRef(str(type_name), str(port_name))
        if port in seen:
            raise ParseError(f"port {port} appears twice in motif", _span(type_name, filename))
        seen.add(port)
        constraints.append(PortConstraint(
            port,
            _build_typed_interval(mult_tree, filename),
            _build_typed_interval(deg_tree, filename),
        ))
    return ConnectorMotif(tuple(constraints))


def parse_diagram(text: str, filename: str = "<string>") -> Diagram:
    """
    Parse and validate a diagram

    Args:
        text: Contents of a .archd file
        filename: Name used in error locations

    Returns:
        Validated Diagram

    Raises:
        ParseError: Lexical or syntactic error, or a malformed interval
        DiagramValidationError: The diagram violates a well-formedness rule
    """
    tree = _parse_tree(diagram_parser(), text, filename)
    name_token = tree.children[0]
    types: List[ComponentType] = []
    cardinality: Dict[str, Interval] = {}
    motifs: List[ConnectorMotif] = []
    motif_spans: Dict[ConnectorMotif, SourceSpan] = {}

    for child in tree.children[1:]:
        if child.data == "typedecl":
            type_token, *port_tokens, card_tree = child.children
            if str(type_token) in cardinality:
                raise ParseError(f"type {type_token} declared twice", _span(type_token, filename))
            port_names = [str(p) for p in port_tokens]
            if len(set(port_names)) != len(port_names):
                raise ParseError(f"type {type_token} declares a port twice", _span(type_token, filename))
            types.append(ComponentType(str(type_token), tuple(port_names)))
            cardinality[str(type_token)] = _build_cardinality(card_tree, filename)
        else:
            motif = _build_motif(child, filename)
            motifs.append(motif)
            motif_spans.setdefault(motif, _span(child, filename))

    diagram = Diagram(str(name_token), tuple(types), cardinality, tuple(motifs))
    report = validate_diagram(diagram)
    if not report.ok:
        first = report.violations[0]
        span = _span(name_token, filename)
        if first.motif is not None and first.motif < len(diagram.motifs):
            span = motif_spans.get(diagram.motifs[first.motif], span)
        raise DiagramValidationError(report, span)
    logger.info(f"Parsed diagram {diagram.name}: {len(types)} types, {len(motifs)} motifs")
    return diagram


def parse_architecture(text: str, d: Diagram, filename: str = "<string>") -> Architecture:
    """
    Parse an architecture and resolve it against a diagram's types

    Duplicate port instances inside a connector and duplicate connectors
    collapse (configurations are sets); each collapse logs a warning.

    Args:
        text: Contents of a .archa file
        d: Diagram supplying component types
        filename: Name used in error locations

    Returns:
        Architecture with resolved port instances

    Raises:
        ParseError: Syntax error, unknown type, port or component id
    """
    tree = _parse_tree(architecture_parser(), text, filename)
    name_token, of_token = tree.children[0], tree.children[1]
    if str(of_token) != d.name:
        logger.warning(f"{filename}: architecture {name_token} is declared of {of_token}, "
                       f"resolving against diagram {d.name}")

    typing: Dict[str, str] = {}
    connectors: List[Connector] = []
    for child in tree.children[2:]:
        if child.data == "comp":
            *id_tokens, type_token = child.children
            if d.component_type(str(type_token)) is None:
                raise ParseError(f"unknown component type {type_token}", _span(type_token, filename))
            for id_token in id_tokens:
                if str(id_token) in typing:
                    raise ParseError(f"component {id_token} declared twice", _span(id_token, filename))
                typing[str(id_token)] = str(type_token)
        else:
            connectors.append(_build_connector(child, d, typing, filename))

    configuration = set()
    for connector in connectors:
        if connector in configuration:
            logger.warning(f"{filename}: duplicate connector {connector} collapsed")
        configuration.add(connector)

    components = tuple(Component(cid, type_name) for cid, type_name in typing.items())
    return Architecture(str(name_token), str(of_token), components, frozenset(configuration))


def _build_connector(tree: Tree, d: Diagram, typing: Dict[str, str], filename: str) -> Connector:
    ports = []
    for pref in tree.children:
        id_token, port_token = pref.children
        component_id = str(id_token)
        if component_id not in typing:
            raise ParseError(f"unknown component id {component_id} in connector", _span(id_token, filename))
        component_type = d.component_type(typing[component_id])
        if str(port_token) not in component_type.ports:
            raise ParseError(f"unknown port {component_id}.{port_token} (type {component_type.name})",
                             _span(port_token, filename))
        instance = PortInstance(component_id, str(port_token))
        if instance in ports:
            logger.warning(f"{filename}: port instance {instance} listed twice in a connector, collapsed")
            continue
        ports.append(instance)
    return Connector(frozenset(ports))


def load_diagram(path) -> Diagram:
    """Read and parse a .archd file"""
    path = Path(path)
    return parse_diagram(path.read_text(encoding="utf-8"), str(path))


def load_architecture(path, d: Diagram) -> Architecture:
    """Read and parse a .archa file against a diagram"""
    path = Path(path)
    return parse_architecture(path.read_text(encoding="utf-8"), d, str(path))


def parse_connector_literal(text: str) -> Optional[Connector]:
    """
    Parse a CLI connector literal such as "Master#1.p,Slave#2.q"

    Returns:
        Connector, or None when the literal is empty
    """
    ports = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        component_id, sep, port_name = part.rpartition(".")
        if not sep or not component_id or not port_name:
            raise ParseError(f"malformed port reference {part!r}, expected id.port")
        ports.append(PortInstance(component_id, port_name))
    return Connector(frozenset(ports)) if ports else None


_INTERVAL_LITERAL = re.compile(r"\s*(?:(?P<exact>[0-9]+)|(?P<kind>sc|mc)\[\s*(?P<lo>[0-9]+)\s*,\s*(?P<hi>[0-9]+)\s*\])\s*")


def parse_interval_literal(text: str) -> TypedInterval:
    """
    Parse a CLI interval literal: "2", "sc[1,3]" or "mc[0,2]"

    Raises:
        ParseError: Malformed literal or lo > hi
    """
    match = _INTERVAL_LITERAL.fullmatch(text)
    if match is None:
        raise ParseError(f"malformed interval {text!r}, expected k, sc[a,b] or mc[a,b]")
    if match.group("exact") is not None:
        return TypedInterval.exact(int(match.group("exact")))
    lo, hi = int(match.group("lo")), int(match.group("hi"))
    if lo > hi:
        raise ParseError(f"interval lo > hi in {text!r}")
    return TypedInterval(match.group("kind"), lo, hi)


def architecture_diagram_name(text: str, filename: str = "<string>") -> str:
    """Name after `of` in an architecture file, read without resolving anything"""
    tree = _parse_tree(architecture_parser(), text, filename)
    return str(tree.children[1])
