"""
Tests for the consistency decision procedures
"""

import pytest
from hypothesis import HealthCheck, assume, given, settings

from src.analysis.consistency import (
    CONNECTOR_COUNT_BOUND,
    MATCHING_FACTOR_MISMATCH,
    MULTIPLICITY_VS_CARDINALITY,
    UNREALIZABLE,
    admissible_sizes,
    check_consistency,
    check_interval,
    check_simple,
    connector_bound,
)
from src.dsl.parser import parse_diagram
from src.model.errors import NotSimpleDiagramError
from src.model.types import MC, TypedInterval
from src.model.validation import is_simple
from src.oracle.brute_force import brute_force
from tests.conftest import CORPUS
from tests.strategies import oracle_cost, valid_diagrams

CONSISTENT = [
    "ambiguous", "binary_sync", "map_reduce", "master_slave_interval", "master_slave_simple",
    "master_slave_uniform", "multi_star", "pairs_triples", "quaternary_sync", "repository",
    "star", "three_port",
]


def test_corpus_is_complete():
    assert sorted(CONSISTENT + ["mismatched_factors"]) == sorted(p.stem for p in CORPUS.glob("*.archd"))


@pytest.mark.parametrize("stem", CONSISTENT)
def test_corpus_diagrams_are_consistent(stem, corpus_diagram):
    report = check_consistency(corpus_diagram(stem))
    assert report.consistent
    assert report.diagnosis is None


def test_mismatched_matching_factors(corpus_diagram):
    report = check_consistency(corpus_diagram("mismatched_factors"))
    assert not report.consistent
    assert report.witness is None
    assert report.diagnosis.condition == MATCHING_FACTOR_MISMATCH
    assert report.diagnosis.message == "matching factors 3 ≠ 2"
    assert report.diagnosis.motif == 0


def test_quaternary_witness(corpus_diagram):
    report = check_simple(corpus_diagram("quaternary_sync"))
    assert report.witness.cardinalities == {"T1": 1, "T2": 3}
    assert report.witness.motifs[0].matching_factor == 1


def test_multiplicity_above_cardinality():
    d = parse_diagram("diagram Big { type T1(p) 4 motif { T1.p : 5 : 1 } }")
    report = check_consistency(d)
    assert report.diagnosis.condition == MULTIPLICITY_VS_CARDINALITY
    assert report.diagnosis.values == {'multiplicity': 5, 'cardinality': 4}


def test_non_integer_matching_factor():
    d = parse_diagram("diagram Odd { type T1(p) 3 motif { T1.p : 2 : 1 } }")
    report = check_consistency(d)
    assert report.diagnosis.condition == MATCHING_FACTOR_MISMATCH
    assert report.diagnosis.message == "matching factor 3/2 is not an integer"


def test_more_connectors_than_candidates():
    # two distinct pairs of {1,2} cannot exist, yet degree 2 needs them
    d = parse_diagram("diagram Dense { type T1(p) 2 motif { T1.p : 2 : 2 } }")
    report = check_consistency(d)
    assert report.diagnosis.condition == CONNECTOR_COUNT_BOUND
    assert report.diagnosis.values == {'matching_factor': 2, 'bound': 1}


def test_zero_degree_motif_is_consistent():
    d = parse_diagram("diagram Idle { type T1(p) 1 type T2(q) 1 motif { T1.p : 2 : 0, T2.q : 1 : 0 } }")
    report = check_consistency(d)
    assert report.consistent
    assert report.witness.motifs[0].matching_factor == 0


def test_uniform_master_slave_witness(corpus_diagram):
    report = check_interval(corpus_diagram("master_slave_uniform"))
    witness = report.witness
    assert witness.cardinalities == {"Master": 2, "Slave": 5}
    assert witness.motifs[0].matching_factor == 2
    assert str(witness.motifs[0].choices[0].degree) == "1"


def test_interval_master_slave_witness(corpus_diagram):
    report = check_interval(corpus_diagram("master_slave_interval"))
    assert report.witness.motifs[0].matching_factor == 2


def test_interval_diagnosis_records_cardinalities():
    d = parse_diagram("diagram Never { type T1(p) [1,2] type T2(q) 3 motif { T1.p : 1 : 1, T2.q : 1 : 1 } }")
    report = check_interval(d)
    assert not report.consistent
    assert report.diagnosis.condition == MATCHING_FACTOR_MISMATCH
    assert report.diagnosis.values['cardinalities'] == {"T1": 1, "T2": 3}


def test_interval_picks_a_working_cardinality():
    d = parse_diagram("diagram Some { type T1(p) [1,3] type T2(q) 3 motif { T1.p : 1 : 1, T2.q : 1 : 1 } }")
    report = check_interval(d)
    assert report.witness.cardinalities == {"T1": 3, "T2": 3}


def test_check_simple_rejects_interval_diagrams(corpus_diagram):
    with pytest.raises(NotSimpleDiagramError):
        check_simple(corpus_diagram("star"))


def test_connector_bound(corpus_diagram):
    d = corpus_diagram("pairs_triples")
    assert connector_bound(d.motifs[0], {"T1": 4, "T2": 4}) == 6 * 4


def test_report_serializes(corpus_diagram):
    data = check_consistency(corpus_diagram("mismatched_factors")).to_dict()
    assert data['consistent'] is False
    assert data['diagnosis']['condition'] == MATCHING_FACTOR_MISMATCH
    assert data['diagnosis']['values'] == {'matching_factors': {'T1.p': '3', 'T2.q': '2'}}


def test_absent_type_admits_the_empty_configuration():
    d = parse_diagram("diagram Absent { type T1(p) 0 type T2(q) 2 motif { T1.p : 1 : 1, T2.q : 1 : 0 } }")
    report = check_consistency(d)
    assert report.consistent
    assert report.witness.motifs[0].matching_factor == 0
    assert len(brute_force(d)) == 1


def test_zero_multiplicity_choice_is_not_a_divisor():
    d = parse_diagram("diagram Optional { type T1(p) 1 motif { T1.p : sc[0,1] : 1 } }")
    report = check_consistency(d)
    assert report.consistent
    choice = report.witness.motifs[0].choices[0]
    assert (str(choice.multiplicity), str(choice.degree)) == ("1", "1")
    assert report.witness.motifs[0].matching_factor == 1


@pytest.mark.parametrize("motif", [
    "T1.p : mc[1,2] : 2",
    "T1.p : mc[0,1] : 2",
    "T1.p : sc[0,1] : 2, T2.q : mc[0,1] : 0",
])
def test_interval_bounds_reject_unbuildable_motifs(motif):
    d = parse_diagram(f"diagram Tight {{ type T1(p) 1 type T2(q) 1 motif {{ {motif} }} }}")
    assert not check_consistency(d).consistent
    assert brute_force(d) == []


def test_multiplicity_is_clamped_to_cardinality():
    d = parse_diagram("diagram Clamp { type T1(p) 1 motif { T1.p : mc[1,2] : 2 } }")
    diagnosis = check_consistency(d).diagnosis
    assert diagnosis.condition == CONNECTOR_COUNT_BOUND
    assert diagnosis.values == {'matching_factor': 2, 'bound': 1, 'cardinalities': {"T1": 1}}


def test_connector_bound_skips_the_empty_combination():
    d = parse_diagram("diagram Loose { type T1(p) 2 type T2(q) 2 motif { T1.p : mc[0,1] : 1, T2.q : mc[0,1] : 0 } }")
    # q never appears (degree 0); p alone gives two singleton connectors
    assert connector_bound(d.motifs[0], {"T1": 2, "T2": 2}) == 2
    assert admissible_sizes(2, TypedInterval(MC, 0, 1), TypedInterval.exact(0)) == [0]
    assert admissible_sizes(1, TypedInterval(MC, 1, 2), TypedInterval.exact(1)) == [1]
    assert admissible_sizes(0, TypedInterval.exact(1), TypedInterval.exact(1)) == []


def test_motifs_competing_for_one_connector_are_unrealizable():
    # both motifs can only build T1#1.p, and each needs it
    d = parse_diagram("""
    diagram Compete {
        type T1(p) 1
        type T2(q) 1
        motif { T1.p : 1 : 1 }
        motif { T1.p : 1 : 1, T2.q : mc[0,1] : 0 }
    }
    """)
    report = check_consistency(d)
    assert not report.consistent
    assert report.diagnosis.condition == UNREALIZABLE
    assert report.diagnosis.motif == 1
    assert "motif#2" in report.diagnosis.message
    assert brute_force(d) == []


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(d=valid_diagrams(simple=True))
def test_simple_and_interval_procedures_agree(d):
    assert is_simple(d)
    assume(oracle_cost(d) <= 4096)
    assert check_simple(d).consistent == check_interval(d).consistent


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(d=valid_diagrams(simple=True))
def test_simple_consistency_matches_the_oracle(d):
    assume(oracle_cost(d) <= 1024)
    assert check_consistency(d).consistent == bool(brute_force(d))


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(d=valid_diagrams())
def test_interval_consistency_matches_the_oracle(d):
    assume(oracle_cost(d) <= 1024)
    report = check_interval(d)
    found = brute_force(d)
    assert report.consistent == bool(found)
    if report.consistent:
        assert report.witness.cardinalities in [_instance_counts(d, a) for a in found]


def _instance_counts(d, a):
    counts = {name: 0 for name in d.type_names}
    for component in a.components:
        counts[component.type_name] += 1
    return counts
