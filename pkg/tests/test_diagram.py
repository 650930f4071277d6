"""Diagram construction, validation, formats and structural operations."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bdiag.diagram import (
    EPSILON,
    canonical_key,
    complement,
    connected_components,
    diagram_from_json,
    format_diagram,
    format_diagram_tuple,
    free_restriction,
    from_key,
    inverse_permutation,
    iso_split,
    juxtapose,
    make,
    parse_diagram,
    permute,
    shuffle_permutations,
    sub_diagram,
    validate,
)

from conftest import diagrams

G = make(4, [3, 2, 2, 1], "7486____", [5, 6], [1, 2, 3, 5])


def test_derived_sets():
    assert G.omega == 8
    assert G.blocks == (1, 1, 1, 2, 2, 3, 3, 4)
    assert G.e_up == (1, 2, 3, 4)
    assert G.e_down == (4, 6, 7, 8)
    assert G.tau == 4
    assert G.cut_up == (7, 8)
    assert G.cut_down == ()
    assert G.is_b()


def test_text_round_trip():
    text = format_diagram(G)
    assert text == "B(4; 3,2,2,1; 7486____; {5,6}; {1,2,3,5})"
    assert parse_diagram(text) == G


def test_tuple_syntax():
    g = parse_diagram("(3,[2,1,1],4⊔⊔⊔,{4},{1,2})")
    assert g == make(3, [2, 1, 1], "4___", [4], [1, 2])
    assert format_diagram_tuple(g) == "(3,[2,1,1],4⊔⊔⊔,{4},{1,2})"
    assert parse_diagram(format_diagram_tuple(EPSILON)) == EPSILON


def test_json_round_trip():
    assert diagram_from_json(G.to_json()) == G


@pytest.mark.parametrize("raw, reason", [
    ((2, [1], "_", (), ()), "length"),
    ((2, [1, 1], "22", (), ()), "injectivity"),
    ((2, [2, 1], "2__", (), ()), "edge direction"),
    ((2, [1, 1], "2_", (1,), ()), "disjointness"),
    ((2, [1, 1], "2_", (), (2,)), "disjointness"),
])
def test_invalid_inputs(raw, reason):
    n, lam, phi, fu, fd = raw
    with pytest.raises(ValueError, match=reason):
        make(n, lam, phi, fu, fd)


def test_downward_edge_is_f_diagram():
    assert validate(2, [1, 1], [0, 1], (), ()).kind == "F"
    with pytest.raises(ValueError):
        make(2, [1, 1], "_1")
    assert make(2, [1, 1], "_1", allow_f=True).phi == (0, 1)


@given(diagrams())
def test_key_round_trip(g):
    assert from_key(canonical_key(g)) == g


@given(diagrams(), diagrams())
def test_order_is_key_order(g, h):
    assert (g < h) == (canonical_key(g) < canonical_key(h))


@given(diagrams(), diagrams())
def test_juxtapose_splits_back(g, h):
    gh = juxtapose(g, h)
    left = tuple(range(1, g.n + 1))
    assert sub_diagram(gh, left) == g
    assert sub_diagram(gh, complement(gh, left)) == h


@given(diagrams())
def test_components_partition_vertices(g):
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(range(1, g.n + 1))
    assert len(iso_split(g)) == 2 ** len(comps)


@given(diagrams(), st.randoms(use_true_random=False))
def test_permute_inverse(g, rnd):
    sigma = list(range(1, g.n + 1))
    rnd.shuffle(sigma)
    assert permute(permute(g, sigma), inverse_permutation(sigma)) == g


def test_shuffle_permutations_count():
    assert len(list(shuffle_permutations(2, 3))) == 10
    assert next(shuffle_permutations(2, 1)) == (1, 2, 3)


def test_free_restriction_restores_free_half_edges():
    g = make(2, [1, 1], "2_", (), ())
    assert sub_diagram(g, (1,)).f_up == ()
    assert free_restriction(g, (1,)).f_up == (1,)
    assert free_restriction(g, (2,)).f_down == (1,)


def test_sub_diagram_of_two_vertices():
    # severed edges leave cut half-edges; free_restriction frees them instead
    assert sub_diagram(G, (1, 3)) == make(2, [3, 2], "5____", [4], [1, 2, 3])
    assert free_restriction(G, (1, 3)) == make(2, [3, 2], "5____", [2, 3, 4], [1, 2, 3, 4])
