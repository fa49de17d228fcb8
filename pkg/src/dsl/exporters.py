"""
JSON and Graphviz DOT exporters for diagrams and architectures
"""

import logging
from pathlib import Path
from typing import Dict, List, Union

import graphviz

from src.dsl.parser import architecture_diagram_name, load_architecture, load_diagram
from src.model.types import Architecture, Connector, Diagram
from src.utils.export_utils import create_export_directory, export_json, export_text

logger = logging.getLogger(__name__)


def connector_strings(connector: Connector):
    return [str(p) for p in connector.sorted_ports()]


def configuration_to_json(connectors) -> list:
    """Configuration as arrays of "componentId.port" strings, canonically sorted"""
    return [connector_strings(c) for c in sorted(connectors, key=lambda c: c.sort_key)]


def architecture_to_json(a: Architecture) -> dict:
    return {
        'architecture': a.name,
        'diagram': a.diagram_name,
        'components': [{'id': c.id, 'type': c.type_name} for c in a.components],
        'configuration': configuration_to_json(a.configuration),
    }


def diagram_to_json(d: Diagram) -> dict:
    def interval(ivl):
        return {'kind': ivl.kind, 'lo': ivl.lo, 'hi': ivl.hi}

    return {
        'diagram': d.name,
        'types': [
            {
                'name': t.name,
                'ports': list(t.ports),
                'cardinality': {'lo': d.cardinality_of(t.name).lo, 'hi': d.cardinality_of(t.name).hi},
            }
            for t in d.types
        ],
        'motifs': [
            [
                {'port': str(c.port), 'multiplicity': interval(c.multiplicity), 'degree': interval(c.degree)}
                for c in motif.constraints
            ]
            for motif in d.motifs
        ],
    }


def _diagram_dot(d: Diagram) -> graphviz.Graph:
    graph = graphviz.Graph(name=d.name, graph_attr={'rankdir': 'LR'})
    for component_type in d.types:
        label = f"{component_type.name} [{d.cardinality_of(component_type.name)}]\\n" + ", ".join(component_type.ports)
        graph.node(component_type.name, label=label, shape='box')
    for index, motif in enumerate(d.motifs):
        motif_node = d.motif_label(index)
        graph.node(motif_node, label='', shape='diamond', width='0.2', height='0.2')
        for constraint in motif.constraints:
            graph.edge(motif_node, constraint.port.type_name,
                       label=f"{constraint.port.port_name} {constraint.multiplicity}:{constraint.degree}")
    return graph


def _architecture_dot(a: Architecture) -> graphviz.Graph:
    graph = graphviz.Graph(name=a.name, graph_attr={'rankdir': 'LR'})
    for component in a.components:
        graph.node(component.id, label=f"{component.id}\\n{component.type_name}", shape='box')
    hyperedges = 0
    for connector in a.sorted_configuration():
        ports = connector.sorted_ports()
        if len(ports) == 2:
            tail, head = ports
            graph.edge(tail.component_id, head.component_id,
                       taillabel=tail.port_name, headlabel=head.port_name)
            continue
        # the point node is only a drawing device for non-binary connectors
        hyperedges += 1
        hub = f"connector_{hyperedges}"
        graph.node(hub, label='', shape='point')
        for port in ports:
            graph.edge(hub, port.component_id, label=port.port_name)
    return graph


def export_dot(x: Union[Diagram, Architecture]) -> str:
    """
    Render a diagram or an architecture as Graphviz DOT text

    Args:
        x: Diagram or Architecture

    Returns:
        DOT source; connectors of arity other than 2 go through a point node
    """
    if isinstance(x, Diagram):
        graph = _diagram_dot(x)
    elif isinstance(x, Architecture):
        graph = _architecture_dot(x)
    else:
        raise TypeError(f"cannot export {type(x).__name__} to DOT")
    return graph.source


def export_corpus(corpus_dir, out_dir) -> Dict[str, List[str]]:
    """
    Write DOT and JSON renderings of every diagram and architecture in a directory

    Architectures are resolved against the corpus diagram named after their `of` clause.

    Args:
        corpus_dir: Directory holding .archd and .archa files
        out_dir: Export directory (created if missing)

    Returns:
        Map of source file name -> written file names
    """
    corpus_dir = Path(corpus_dir)
    out_dir = create_export_directory(out_dir)
    written: Dict[str, List[str]] = {}
    diagrams: Dict[str, Diagram] = {}

    for path in sorted(corpus_dir.glob("*.archd")):
        d = load_diagram(path)
        diagrams[d.name] = d
        written[path.name] = _export_pair(export_dot(d), diagram_to_json(d), out_dir, path.stem)

    for path in sorted(corpus_dir.glob("*.archa")):
        diagram_name = architecture_diagram_name(path.read_text(encoding="utf-8"), str(path))
        if diagram_name not in diagrams:
            logger.warning(f"Skipping {path.name}: no corpus diagram named {diagram_name}")
            continue
        a = load_architecture(path, diagrams[diagram_name])
        written[path.name] = _export_pair(export_dot(a), architecture_to_json(a), out_dir, f"{path.stem}_arch")

    logger.info(f"Exported {len(written)} corpus files to {out_dir}")
    return written


def _export_pair(dot: str, data: dict, out_dir: Path, stem: str) -> List[str]:
    names = []
    if export_text(dot, out_dir / f"{stem}.dot"):
        names.append(f"{stem}.dot")
    if export_json(data, out_dir / f"{stem}.json"):
        names.append(f"{stem}.json")
    return names
