"""
Tests de construction et de transformation des hypergraphes
"""
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings as hsettings, strategies as st
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import CapacityError, InputError, UnknownExampleError
from app.data.hypergraph_core import hypergraph_core
from app.models.hypergraph import Graph, Hypergraph
from app.utils.combinatorics import rank_subset, unrank_subset


def test_hypergraph_is_canonical():
    a = Hypergraph(n=4, r=2, edges=((3, 4), (2, 1)))
    b = Hypergraph(n=4, r=2, edges=((1, 2), (3, 4)))
    assert a == b
    with pytest.raises(ValidationError):
        Hypergraph(n=3, r=2, edges=((1, 2), (2, 1)))
    with pytest.raises(ValidationError):
        Hypergraph(n=3, r=2, edges=((1, 4),))
    with pytest.raises(ValidationError):
        Hypergraph(n=2, r=3)
    assert Hypergraph(n=0, r=3).is_empty


def test_derived_hypergraph_of_seven_edge(seven_edge):
    derived = hypergraph_core.derive(seven_edge, 2)
    assert derived.n == comb(7, 2)
    assert derived.r == comb(4, 2)
    assert derived.num_edges == 7
    assert hypergraph_core.derived_label(seven_edge, 2, 1) == (1, 2)
    assert hypergraph_core.derived_label(seven_edge, 2, 21) == (6, 7)


def test_derive_with_m_equal_r_is_a_relabelling(k6_quad):
    derived = hypergraph_core.derive(k6_quad, 4)
    assert derived.r == 1
    assert derived.num_edges == k6_quad.num_edges


def test_derive_rejects_bad_m(k6_quad):
    with pytest.raises(InputError):
        hypergraph_core.derive(k6_quad, 0)
    with pytest.raises(InputError):
        hypergraph_core.derive(k6_quad, 5)


def test_derive_capacity(monkeypatch, k6_quad):
    monkeypatch.setattr(settings, "MAX_DERIVED_VERTICES", 10)
    with pytest.raises(CapacityError):
        hypergraph_core.derive(k6_quad, 2)


@given(n=st.integers(min_value=1, max_value=9), data=st.data())
@hsettings(max_examples=60, deadline=None)
def test_rank_unrank_are_inverse(n, data):
    m = data.draw(st.integers(min_value=1, max_value=n))
    rank = data.draw(st.integers(min_value=0, max_value=comb(n, m) - 1))
    assert rank_subset(unrank_subset(rank, n, m), n) == rank


def test_named_examples():
    assert hypergraph_core.examples("k6_quad").num_edges == 15
    assert hypergraph_core.examples("simplex(3)") == hypergraph_core.complete(4, 3)
    assert hypergraph_core.examples("triangles(4)").num_edges == 4
    assert hypergraph_core.examples("triangles(5)").num_edges == 10
    assert hypergraph_core.examples("empty(5,3)").is_empty
    with pytest.raises(UnknownExampleError):
        hypergraph_core.examples("petersen")
    with pytest.raises(UnknownExampleError):
        hypergraph_core.examples("simplex(1,2)")


def test_complement():
    h = Hypergraph(n=4, r=3, edges=((1, 2, 3),))
    complement = hypergraph_core.complement(h)
    assert complement.num_edges == 3
    assert (1, 2, 3) not in complement.edge_set()


def test_clique_hypergraphs():
    k6 = hypergraph_core.graph_examples("K6")
    assert hypergraph_core.clique_hypergraph(k6, 4) == hypergraph_core.complete(6, 4)
    c5 = hypergraph_core.graph_examples("C5")
    assert hypergraph_core.clique_hypergraph(c5, 3).is_empty
    two_k6 = hypergraph_core.graph_examples("two_k6")
    assert two_k6.n == 11
    assert hypergraph_core.clique_hypergraph(two_k6, 4).num_edges == 30


def test_induced_renumbers_vertices(seven_edge):
    induced, labels = hypergraph_core.induced(seven_edge, [6, 5, 4, 3, 2, 1])
    assert labels == (1, 2, 3, 4, 5, 6)
    assert induced.edges == ((1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 5, 6))

    induced, labels = hypergraph_core.induced(seven_edge, [3, 5, 7, 2])
    assert labels == (2, 3, 5, 7)
    assert induced.edges == ((1, 2, 3, 4),)


def test_induced_on_few_vertices_is_empty(seven_edge):
    induced, labels = hypergraph_core.induced(seven_edge, [1, 2])
    assert induced.n == 0 and induced.is_empty
    assert labels == (1, 2)
    with pytest.raises(InputError):
        hypergraph_core.induced(seven_edge, [0, 1])


def test_random_hypergraph_extremes():
    assert hypergraph_core.random_hypergraph(6, 3, Fraction(1), 7) == hypergraph_core.complete(6, 3)
    assert hypergraph_core.random_hypergraph(6, 3, Fraction(0), 7).is_empty
    with pytest.raises(InputError):
        hypergraph_core.random_hypergraph(6, 3, Fraction(3, 2), 7)


def test_random_generators_are_deterministic():
    first = hypergraph_core.random_hypergraph(10, 3, Fraction(1, 4), 42)
    assert first == hypergraph_core.random_hypergraph(10, 3, Fraction(1, 4), 42)
    sized = hypergraph_core.random_sized_hypergraph(9, 4, 20, 3)
    assert sized.num_edges == 20
    assert sized == hypergraph_core.random_sized_hypergraph(9, 4, 20, 3)
    with pytest.raises(InputError):
        hypergraph_core.random_sized_hypergraph(5, 4, 6, 1)
    graph = hypergraph_core.random_graph(8, Fraction(1, 2), 5)
    assert graph == hypergraph_core.random_graph(8, Fraction(1, 2), 5)


def test_load(tmp_path):
    assert hypergraph_core.load("examples:seven_edge").num_edges == 7
    assert isinstance(hypergraph_core.load("graph:K6"), Graph)
    empty = hypergraph_core.load("empty", 3)
    assert empty.r == 3 and empty.n == 0 and empty.is_empty
    path = tmp_path / "h.hg1"
    path.write_text("4 3\n1 2 3\n", encoding="utf-8")
    assert hypergraph_core.load(str(path)).edges == ((1, 2, 3),)
    graph_path = tmp_path / "g.gr1"
    graph_path.write_text("3\n1 2\n", encoding="utf-8")
    assert hypergraph_core.load(f"graph:{graph_path}").adjacency == ((1, 2),)
    with pytest.raises(InputError):
        hypergraph_core.load(str(tmp_path / "absent.hg1"))


@pytest.mark.parametrize("n, r", [(n, r) for n in range(2, 9) for r in range(2, n + 1)])
def test_cliques_of_complete_graph(n, r):
    k_n = hypergraph_core.complete_graph(n)
    assert hypergraph_core.clique_hypergraph(k_n, r) == hypergraph_core.complete(n, r)


@pytest.mark.property_based
@given(seed=st.integers(min_value=0, max_value=10_000), n=st.integers(min_value=3, max_value=8))
@hsettings(max_examples=40, deadline=None)
def test_complement_is_an_involution(seed, n):
    h = hypergraph_core.random_hypergraph(n, 3, Fraction(1, 2), seed)
    complement = hypergraph_core.complement(h)
    assert hypergraph_core.complement(complement) == h
    assert h.num_edges + complement.num_edges == comb(n, 3)


def test_cliques_larger_than_the_graph():
    h = hypergraph_core.clique_hypergraph(hypergraph_core.complete_graph(3), 4)
    assert h.is_empty and (h.n, h.r) == (0, 4)
    with pytest.raises(InputError):
        hypergraph_core.empty(2, 3)
