"""
Tests for the diagram and architecture formats: parser, printer and exporters
"""

import dataclasses
import json
import logging

import pytest
from hypothesis import HealthCheck, assume, given, settings
import hypothesis.strategies as st

from src.dsl.exporters import architecture_to_json, diagram_to_json, export_corpus, export_dot
from src.dsl.parser import (
    parse_architecture,
    parse_connector_literal,
    parse_diagram,
    parse_interval_literal,
)
from src.dsl.printer import print_architecture, print_diagram
from src.model.errors import DiagramValidationError, ParseError
from src.model.types import MC, SC, Connector, PortInstance, TypedInterval
from tests.conftest import CORPUS
from tests.strategies import architectures, identifiers, valid_diagrams

DIAGRAM_FILES = sorted(CORPUS.glob("*.archd"))

SYNC = """
diagram Sync {
    type T1(p) 1
    type T2(q) 3
    motif { T1.p : 1 : 1, T2.q : 3 : 1 }
}
"""


def test_parse_simple_diagram():
    d = parse_diagram(SYNC)
    assert d.name == "Sync"
    assert d.type_names == ["T1", "T2"]
    assert d.cardinality_of("T2").lo == 3
    assert str(d.motifs[0]) == "{ T1.p : 1 : 1, T2.q : 3 : 1 }"


def test_optional_terminators_and_comments():
    d = parse_diagram("""
    # leading comment
    diagram D {
        type A(x, y) [1,2];   # two ports
        motif { A.x : mc[1,2] : sc[0,3] };
        motif { A.y : 1 : 1 }
    }
    """)
    assert d.component_type("A").ports == ("x", "y")
    assert d.motifs[0].constraints[0].multiplicity == TypedInterval(MC, 1, 2)


def test_syntax_error_has_span():
    with pytest.raises(ParseError) as e:
        parse_diagram("diagram D {\n    type T(p) 1\n    motif { T.p : 1 : }\n}\n", "bad.archd")
    assert e.value.span.file == "bad.archd"
    assert e.value.span.line == 3


def test_unexpected_character():
    with pytest.raises(ParseError) as e:
        parse_diagram("diagram D { type T(p) 1 @ }")
    assert e.value.span.line == 1


def test_truncated_input():
    with pytest.raises(ParseError):
        parse_diagram("diagram D {")


def test_interval_lo_above_hi():
    with pytest.raises(ParseError, match="lo > hi"):
        parse_diagram("diagram D {\n type T(p) [3,1]\n motif { T.p : 1 : 1 }\n}")


def test_empty_motif():
    with pytest.raises(ParseError, match="at least one port"):
        parse_diagram("diagram D { type T(p) 1 motif { } }")


def test_port_twice_in_motif():
    with pytest.raises(ParseError, match="twice"):
        parse_diagram("diagram D { type T(p) 1 motif { T.p : 1 : 1, T.p : 1 : 1 } }")


def test_validation_error_carries_report_and_motif_span():
    with pytest.raises(DiagramValidationError) as e:
        parse_diagram("diagram D {\n type T(p) 1\n motif { T.x : 1 : 1 }\n}\n")
    assert 'unresolved-port' in e.value.report.rules()
    assert e.value.span.line == 3


def test_diagram_without_motifs_is_a_syntax_error():
    with pytest.raises(ParseError):
        parse_diagram("diagram D { type T(p) 1 }")


def test_architecture_without_components_is_a_syntax_error():
    with pytest.raises(ParseError):
        parse_architecture("architecture X of Sync { }", parse_diagram(SYNC))


@pytest.mark.parametrize("path", DIAGRAM_FILES, ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    d = parse_diagram(path.read_text(encoding="utf-8"), str(path))
    text = print_diagram(d)
    again = parse_diagram(text)
    assert again == d
    assert print_diagram(again) == text


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(d=valid_diagrams(), name=identifiers)
def test_random_round_trip(d, name):
    d = dataclasses.replace(d, name=name)
    text = print_diagram(d)
    assert parse_diagram(text) == d
    assert print_diagram(parse_diagram(text)) == text


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(data=st.data())
def test_random_architecture_round_trip(data):
    d = data.draw(valid_diagrams())
    a = data.draw(architectures(d))
    assume(a.components)
    text = print_architecture(a)
    assert parse_architecture(text, d) == a
    assert print_architecture(parse_architecture(text, d)) == text


def test_architecture_with_canonical_ids_and_comments():
    d = parse_diagram(SYNC)
    a = parse_architecture("""
    architecture X of Sync {   # canonical ids keep their '#'
        component T1#1 : T1
        component T2#1, T2#2, T2#3 : T2
        connector T1#1.p, T2#1.q, T2#2.q, T2#3.q;
    }
    """, d)
    assert [c.id for c in a.components] == ["T1#1", "T2#1", "T2#2", "T2#3"]
    assert len(a.configuration) == 1
    assert len(next(iter(a.configuration))) == 4


def test_architecture_round_trip(corpus_architecture):
    a = corpus_architecture("map_reduce", "map_reduce")
    d = parse_diagram((CORPUS / "map_reduce.archd").read_text(encoding="utf-8"))
    assert parse_architecture(print_architecture(a), d) == a


def test_duplicates_collapse_with_warning(caplog):
    d = parse_diagram(SYNC)
    with caplog.at_level(logging.WARNING):
        a = parse_architecture("""
        architecture X of Sync {
            component A : T1
            component B1, B2, B3 : T2
            connector A.p, B1.q, B2.q, B3.q
            connector B3.q, B2.q, B1.q, A.p
            connector A.p, A.p
        }
        """, d)
    assert len(a.configuration) == 2
    assert "duplicate connector" in caplog.text
    assert "listed twice" in caplog.text


def test_diagram_name_mismatch_only_warns(caplog):
    d = parse_diagram(SYNC)
    with caplog.at_level(logging.WARNING):
        a = parse_architecture("architecture X of Other { component A : T1 }", d)
    assert a.diagram_name == "Other"
    assert "resolving against diagram Sync" in caplog.text


@pytest.mark.parametrize("text, message", [
    ("architecture X of Sync { component A : T9 }", "unknown component type"),
    ("architecture X of Sync { component A : T1 connector B.p }", "unknown component id"),
    ("architecture X of Sync { component A : T1 connector A.q }", "unknown port"),
    ("architecture X of Sync { component A, A : T1 }", "declared twice"),
])
def test_architecture_resolution_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_architecture(text, parse_diagram(SYNC))


def test_connector_literal():
    expected = Connector.of(PortInstance("Master#1", "p"), PortInstance("Slave#2", "q"))
    assert parse_connector_literal("Master#1.p, Slave#2.q") == expected
    assert parse_connector_literal("") is None
    with pytest.raises(ParseError):
        parse_connector_literal("Master#1")


@pytest.mark.parametrize("text, expected", [
    ("2", TypedInterval.exact(2)),
    ("sc[1,3]", TypedInterval(SC, 1, 3)),
    ("mc[ 0 , 2 ]", TypedInterval(MC, 0, 2)),
    ("mc[2,2]", TypedInterval.exact(2)),
])
def test_interval_literal(text, expected):
    assert parse_interval_literal(text) == expected


@pytest.mark.parametrize("text", ["mc[3,1]", "xc[1,2]", "", "1,2"])
def test_bad_interval_literal(text):
    with pytest.raises(ParseError):
        parse_interval_literal(text)


def test_diagram_json(corpus_diagram):
    data = diagram_to_json(corpus_diagram("star"))
    assert data['diagram'] == "Star"
    assert [t['name'] for t in data['types']] == ["Center", "Satellite"]
    assert data['types'][1]['cardinality'] == {'lo': 1, 'hi': 4}
    assert data['motifs'][0][0] == {
        'port': "Center.p",
        'multiplicity': {'kind': 'sc', 'lo': 1, 'hi': 1},
        'degree': {'kind': 'sc', 'lo': 1, 'hi': 4},
    }
    assert json.loads(json.dumps(data)) == data


def test_architecture_json(corpus_architecture):
    data = architecture_to_json(corpus_architecture("master_slave_crossed", "master_slave_interval"))
    assert data['configuration'] == [["M1.p", "S2.q"], ["M2.p", "S1.q"]]
    assert data['components'][0] == {'id': "M1", 'type': "Master"}


def test_dot_export(corpus_diagram, corpus_architecture):
    assert export_dot(corpus_diagram("star")).startswith("graph Star {")
    binary = export_dot(corpus_architecture("master_slave_parallel", "master_slave_interval"))
    assert "--" in binary
    assert "shape=point" not in binary
    quaternary = export_dot(corpus_architecture("quaternary_sync", "quaternary_sync"))
    assert "shape=point" in quaternary


def test_dot_export_rejects_other_values():
    with pytest.raises(TypeError):
        export_dot("not a model")


def test_export_corpus(tmp_path):
    written = export_corpus(CORPUS, tmp_path)
    assert written["star.archd"] == ["star.dot", "star.json"]
    assert written["quaternary_sync.archa"] == ["quaternary_sync_arch.dot", "quaternary_sync_arch.json"]
    assert (tmp_path / "map_reduce_arch.json").exists()
    assert json.loads((tmp_path / "star.json").read_text(encoding="utf-8"))['diagram'] == "Star"
