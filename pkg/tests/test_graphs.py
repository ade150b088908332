import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_automorphisms
from toricgw.feynman import degree_vectors
from toricgw.graphs import (
    AtomProfile,
    ColoredGraph,
    automorphism_order,
    balanced_profiles,
    canonical_form,
    chemistry_vev,
    degree_identities,
    enumerate_graphs,
    graph_invariants,
    profile_graph_sum,
)


def test_invariant_examples():
    g = ColoredGraph(3, (0, 1), ((0, 1, 1),))
    assert graph_invariants(g)[:2] == (0, (1, 0, 0))
    two_cycle = ColoredGraph(2, (0, 1), ((0, 1, 1), (1, 0, 1)))
    assert graph_invariants(two_cycle)[:2] == (1, (1, 1))
    pair = ColoredGraph(3, (0, 1, 0, 1), ((0, 1, 1), (2, 3, 1)))
    assert pair.genus == -1


def test_edges_are_oriented_by_color():
    g = ColoredGraph(3, (0, 1), ((1, 0, 2),))
    assert g.edges == ((0, 1, 2),)
    assert g.degree == (2, 0, 0)
    # color 2 -> color 0 is class e_2
    h = ColoredGraph(3, (2, 0), ((1, 0, 1),))
    assert h.degree == (0, 0, 1)


def test_malformed_graphs():
    with pytest.raises(ValueError, match="malformed coloring"):
        ColoredGraph(4, (0, 2), ((0, 1, 1),))
    with pytest.raises(ValueError):
        ColoredGraph(3, (0, 1), ((0, 1, 0),))
    with pytest.raises(ValueError):
        ColoredGraph(3, (0, 5), ((0, 1, 1),))
    with pytest.raises(ValueError):
        ColoredGraph(3, (0,), ((0, 1, 1),))


def test_automorphism_examples():
    assert automorphism_order(ColoredGraph(2, (0, 1), ((0, 1, 1), (1, 0, 1)))) == 1
    assert automorphism_order(ColoredGraph(3, (0, 1), ((0, 1, 1), (0, 1, 1)))) == 2
    assert automorphism_order(ColoredGraph(3, (0, 1, 0, 1), ((0, 1, 1), (2, 3, 1)))) == 2


def test_enumeration_examples():
    assert len(enumerate_graphs(2, (1, 1), connected_only=True)) == 3
    assert len(enumerate_graphs(3, (1, 0, 0))) == 1
    found = enumerate_graphs(3, (2, 0, 0))
    assert len(found) == 5
    summary = sorted((g.genus, aut) for g, aut in found)
    assert summary == [(-1, 2), (0, 1), (0, 2), (0, 2), (1, 2)]


def test_enumeration_rejects_zero_degree():
    with pytest.raises(ValueError):
        enumerate_graphs(3, (0, 0, 0))
    with pytest.raises(ValueError):
        enumerate_graphs(3, (1, 0))


def test_json_round_trip():
    g = ColoredGraph(3, (0, 1, 2), ((0, 1, 1), (1, 2, 2), (2, 0, 1)))
    text = json.dumps(g.to_json())
    assert ColoredGraph.from_json(text) == g


@pytest.mark.parametrize("k", [2, 3])
def test_enumerated_graphs_are_distinct_and_sound(k):
    for d in degree_vectors(k, 3):
        found = enumerate_graphs(k, d)
        keys = {canonical_form(g) for g, _ in found}
        assert len(keys) == len(found)
        for g, aut in found:
            assert g.degree == d
            assert all(degree_identities(g).values())
            assert aut == brute_automorphisms(g.colors, g.edges)


def test_connected_subset():
    full = enumerate_graphs(3, (1, 1, 1))
    conn = enumerate_graphs(3, (1, 1, 1), connected_only=True)
    assert {canonical_form(g) for g, _ in conn} <= {canonical_form(g) for g, _ in full}
    assert all(g.genus >= 0 for g, _ in conn)


@st.composite
def relabelled(draw):
    k = draw(st.sampled_from([2, 3]))
    d = draw(st.sampled_from(degree_vectors(k, 3)))
    g, _ = draw(st.sampled_from(enumerate_graphs(k, d)))
    perm = draw(st.permutations(range(g.n_vertices)))
    colors = [0] * g.n_vertices
    for v, c in enumerate(g.colors):
        colors[perm[v]] = c
    edges = tuple((perm[u], perm[v], e) for u, v, e in g.edges)
    return g, ColoredGraph(k, tuple(colors), edges)


@given(relabelled())
@settings(max_examples=100, deadline=None)
def test_canonical_form_is_relabelling_invariant(pair):
    g, h = pair
    assert canonical_form(g) == canonical_form(h)
    assert automorphism_order(g) == automorphism_order(h)


# -- chemistry ------------------------------------------------------------

def test_chemistry_examples():
    assert chemistry_vev(AtomProfile(2, {})) == 1
    two_cycle = AtomProfile(2, {(0, (1,), (1,)): 1, (1, (1,), (1,)): 1})
    assert chemistry_vev(two_cycle) == 1
    out_star = AtomProfile(3, {(0, (1, 1), ()): 1, (1, (), (1,)): 2})
    assert chemistry_vev(out_star) == Fraction(1, 2)
    assert profile_graph_sum(out_star) == Fraction(1, 2)


def test_unbalanced_profile_is_zero():
    p = AtomProfile(2, {(0, (1,), ()): 1})
    assert not p.is_balanced()
    assert chemistry_vev(p) == 0
    assert profile_graph_sum(p) == 0


def test_profile_rejects_empty_atom():
    with pytest.raises(ValueError):
        AtomProfile(2, {(0, (), ()): 1})


def test_balanced_profiles_are_balanced():
    for p in balanced_profiles(3, 4, 2):
        assert p.is_balanced()
        assert p.bond_count() <= 4


@given(st.sampled_from(balanced_profiles(3, 6, 2)))
@settings(max_examples=60, deadline=None)
def test_chemistry_lemma_samples(profile):
    assert chemistry_vev(profile) == profile_graph_sum(profile)
