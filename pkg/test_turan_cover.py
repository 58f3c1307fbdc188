"""
Tests des nombres de Turán exacts, des designs couvrants et du contrôle tau <= ex * nu*
"""
from itertools import combinations
from math import comb

import pytest

from app.core.exceptions import CapacityError, InputError
from app.data.hypergraph_core import hypergraph_core
from app.data.turan_cover import TuranCoverBuilder, turan_cover
from app.models.hypergraph import Hypergraph
from app.utils.combinatorics import iter_subsets


def _triples(max_n, max_r):
    return [(n, k, r) for n in range(2, max_n + 1) for r in range(1, max_r + 1) for k in range(r + 1, n + 1)]


@pytest.mark.parametrize(
    "n, r, k, expected",
    [(4, 2, 3, 4), (4, 3, 4, 3), (3, 2, 3, 2), (5, 3, 4, 7), (6, 2, 4, 12)],
)
def test_known_turan_numbers(n, r, k, expected):
    assert turan_cover.turan_number(n, r, k) == expected


def test_known_covering_numbers():
    assert turan_cover.covering_design_number(4, 4, 3) == 1
    assert turan_cover.covering_design_number(3, 3, 2) == 1
    assert turan_cover.covering_design_number(7, 3, 1) == 5


@pytest.mark.parametrize("n", range(3, 9))
def test_mantel(n):
    assert turan_cover.turan_number(n, 2, 3) == n * n // 4


@pytest.mark.parametrize("n, k, r", [t for t in _triples(6, 4) if comb(t[0], t[2]) <= 20])
def test_direct_enumeration_agrees(n, k, r):
    fresh = TuranCoverBuilder()
    assert fresh.covering_design_number(n, k, r, method="direct") == fresh.covering_design_number(n, k, r)


def test_design_hits_every_block():
    design = set(turan_cover.covering_design(6, 4, 3))
    for block in iter_subsets(6, 4):
        assert any(x in design for x in combinations(block, 3))


def test_extremal_hypergraph_is_clique_free():
    h = turan_cover.extremal_hypergraph(6, 3, 4)
    assert h.num_edges == turan_cover.turan_number(6, 3, 4)
    assert turan_cover.find_clique(h, 4) is None


@pytest.mark.slow
@pytest.mark.parametrize("n, k, r", _triples(8, 4))
def test_identity_and_witnesses(n, k, r):
    covering = turan_cover.covering_design_number(n, k, r)
    ex = turan_cover.turan_number(n, r, k)
    assert covering + ex == comb(n, r)
    assert turan_cover.find_clique(turan_cover.extremal_hypergraph(n, r, k), k) is None
    if n > k:
        assert ex >= turan_cover.turan_number(n - 1, r, k)
    if k < n:
        assert ex <= turan_cover.turan_number(n, r, k + 1)


def test_invalid_triples():
    with pytest.raises(InputError):
        turan_cover.turan_number(5, 3, 3)
    with pytest.raises(InputError):
        turan_cover.covering_design_number(5, 4, 3, method="autre")
    with pytest.raises(CapacityError):
        turan_cover.turan_number(10, 4, 5)
    with pytest.raises(CapacityError):
        turan_cover.covering_design_number(7, 4, 3, method="direct")


def test_jstar_on_seven_edge(seven_edge):
    report = turan_cover.jstar_bound_check(seven_edge, 2)
    assert report.tau == 4
    assert report.exbound == 4
    assert report.satisfied


def test_jstar_requires_m_below_r(seven_edge):
    with pytest.raises(InputError):
        turan_cover.jstar_bound_check(seven_edge, 4)
    with pytest.raises(InputError):
        turan_cover.jstar_bound_check(seven_edge, 1)


def test_jstar_on_empty_hypergraph():
    report = turan_cover.jstar_bound_check(Hypergraph(n=0, r=3, edges=()), 2)
    assert report.tau == 0 and report.satisfied


@pytest.mark.slow
@pytest.mark.property_based
@pytest.mark.parametrize("r, m", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_jstar_bound_on_random_hypergraphs(r, m):
    for seed in range(130):
        n = r + 1 + seed % 3
        size = 1 + seed % min(comb(n, r), 12)
        h = hypergraph_core.random_sized_hypergraph(n, r, size, seed)
        report = turan_cover.jstar_bound_check(h, m)
        assert report.satisfied, seed
        assert report.exbound == turan_cover.turan_number(r, m, m + 1)
