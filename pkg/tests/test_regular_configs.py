"""
Tests for supports, incidence matrices and regular configurations of one generic port
"""

from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from src.analysis.regular_configs import (
    build_incidence,
    enumerate_regular,
    enumerate_supports,
    format_regular_table,
)
from src.model.types import MC, SC, TypedInterval

exact = TypedInterval.exact


def test_supports_are_ordered_by_size_then_members():
    index = enumerate_supports(4, exact(2))
    assert index.supports == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert index.w == 6
    assert index.index_of((4, 2)) == 4
    assert index.index_of((1, 2, 3)) is None


def test_multiple_choice_supports_include_empty():
    index = enumerate_supports(3, TypedInterval(MC, 0, 1))
    assert index.supports == ((), (1,), (2,), (3,))
    assert index.has_empty_support()


def test_single_choice_range_must_be_split():
    with pytest.raises(ValueError):
        enumerate_supports(3, TypedInterval(SC, 1, 2))


def test_incidence_matrix_and_equations():
    matrix = build_incidence(3, enumerate_supports(3, exact(2)))
    assert matrix.shape == (3, 3)
    assert np.array_equal(matrix.G, np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1]]))
    assert matrix.equations() == ["x1+x2 = d", "x1+x3 = d", "x2+x3 = d"]


def test_perfect_matchings_of_four_instances():
    configs = enumerate_regular(4, exact(2), exact(1))
    assert [str(c) for c in configs] == ["[001100]", "[010010]", "[100001]"]
    assert all(c.degrees == (1, 1, 1, 1) for c in configs)
    assert all(c.connector_count == 2 for c in configs)


@pytest.mark.parametrize("degree, count", [(0, 1), (1, 3), (2, 6), (3, 10)])
def test_pairs_over_four_instances(degree, count):
    assert len(enumerate_regular(4, exact(2), exact(degree))) == count


@pytest.mark.parametrize("degree, vectors", [
    (2, ["[002200]", "[011110]", "[020020]", "[101101]", "[110011]", "[200002]"]),
    (3, ["[003300]", "[012210]", "[021120]", "[030030]", "[102201]",
         "[111111]", "[120021]", "[201102]", "[210012]", "[300003]"]),
])
def test_pairs_over_four_instances_verbatim(degree, vectors):
    configs = enumerate_regular(4, exact(2), exact(degree))
    assert [str(c) for c in configs] == vectors
    assert all(c.degrees == (degree,) * 4 for c in configs)
    assert all(c.connector_count == 2 * degree for c in configs)


def test_triples_over_four_instances():
    configs = enumerate_regular(4, exact(3), exact(3))
    assert [str(c) for c in configs] == ["[1111]"]


def test_no_solution_when_degrees_cannot_balance():
    # three instances, pairs, degree 1: three half-edges cannot be paired
    assert enumerate_regular(3, exact(2), exact(1)) == []


def test_single_choice_degree_is_uniform():
    configs = enumerate_regular(2, exact(1), TypedInterval(SC, 0, 2))
    assert [c.degrees for c in configs] == [(0, 0), (1, 1), (2, 2)]


def test_multiple_choice_degree_varies_per_instance():
    configs = enumerate_regular(2, exact(1), TypedInterval(MC, 0, 1))
    assert sorted(c.degrees for c in configs) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_single_choice_multiplicity_keeps_sizes_apart():
    configs = enumerate_regular(2, TypedInterval(SC, 1, 2), exact(1))
    assert [c.supports.supports for c in configs] == [((1,), (2,)), ((1, 2),)]


def test_table_lines():
    lines = format_regular_table(enumerate_regular(4, exact(3), exact(3)))
    assert lines == ["[1111]  connectors=4  degrees=[3, 3, 3, 3]"]


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 4), m=st.integers(1, 4), d=st.integers(0, 2))
def test_solutions_are_exactly_the_regular_vectors(n, m, d):
    """Every vector found is d-regular, and every d-regular vector is found"""
    m = min(m, n)
    index = enumerate_supports(n, exact(m))
    G = build_incidence(n, index).G
    found = {c.x for c in enumerate_regular(n, exact(m), exact(d))}
    for x in found:
        assert np.all(G @ np.array(x) == d)
        assert sum(x) * m == n * d
    expected = {
        x for x in product(range(d + 1), repeat=index.w)
        if np.all(G @ np.array(x, dtype=np.int64) == d)
    }
    assert found == expected
