"""
Tests des K_{r+1}^r-couvertures par partitions aléatoires
"""
from fractions import Fraction

import pytest

from app.core.exceptions import BudgetNotMetError, InputError
from app.data import turan_cover as turan_cover_module
from app.data.hypergraph_core import hypergraph_core
from app.data.turan_cover import turan_cover
from app.models.hypergraph import Hypergraph
from app.models.turan import PartitionAssignment


@pytest.mark.parametrize(
    "r, expected",
    [(2, Fraction(1, 2)), (3, Fraction(4, 9)), (4, Fraction(3, 8)), (5, Fraction(113, 243)),
     (6, Fraction(307, 729))],
)
def test_membership_probabilities(r, expected):
    assert turan_cover.membership_probability(r) == expected


def test_frankl_rodl_probability_for_small_r():
    assert turan_cover.membership_probability(3, l=3) == Fraction(17, 27)
    assert turan_cover.membership_probability(4, l=2) == Fraction(1, 2) + Fraction(1, 16)


def test_lemma41_on_balanced_partition():
    h = hypergraph_core.complete(9, 3)
    partition = PartitionAssignment(l=3, parts={v: (v - 1) // 3 for v in range(1, 10)})
    result = turan_cover.kcover_lemma41(h, partition)
    assert result.size == 30
    assert result.verified and result.certified
    assert result.family_index == "lemma41"
    assert result.size_bound == Fraction(4, 9) * 84


def test_bipartition_on_k4():
    h = hypergraph_core.complete(4, 2)
    partition = PartitionAssignment(l=2, parts={1: 0, 2: 0, 3: 1, 4: 1})
    result = turan_cover.kcover_bipartition(h, partition)
    assert result.cover == ((1, 2), (3, 4))
    assert result.certified


def test_lemma42_can_miss_the_budget_on_one_partition():
    h = hypergraph_core.complete(5, 4)
    partition = PartitionAssignment(l=4, parts={1: 0, 2: 1, 3: 2, 4: 3, 5: 0})
    result = turan_cover.kcover_lemma42(h, partition)
    assert result.cover == ((1, 2, 3, 4), (2, 3, 4, 5))
    assert result.verified and not result.certified


def test_partition_must_match():
    h = hypergraph_core.complete(5, 3)
    with pytest.raises(InputError):
        turan_cover.kcover_lemma41(h, PartitionAssignment(l=3, parts={1: 0, 2: 1, 3: 2}))
    with pytest.raises(InputError):
        turan_cover.kcover_lemma42(h, 1)


def test_seeded_partitions_are_reproducible():
    h = hypergraph_core.complete(8, 3)
    assert turan_cover.kcover_lemma41(h, 5) == turan_cover.kcover_lemma41(h, 5)
    assert turan_cover.kcover_lemma41(h, 5).seed == 5


def test_frankl_rodl_identity():
    h = hypergraph_core.complete(8, 5)
    for seed in range(1, 6):
        report = turan_cover.kcover_frankl_rodl(h, 3, seed)
        assert report.identity_holds
        assert report.total_size == h.num_edges + report.missing_total
        assert all(family.verified for family in report.families)
        assert report.expected_fraction == Fraction(113, 243)


def test_frankl_rodl_with_one_part_keeps_everything():
    h = hypergraph_core.complete(7, 5)
    report = turan_cover.kcover_frankl_rodl(h, 1, 3)
    assert report.families[0].cover == h.edges
    assert report.missing_total == 0


def test_find_clique():
    h = hypergraph_core.complete(5, 4)
    assert turan_cover.find_clique(h, 5) == (1, 2, 3, 4, 5)
    assert turan_cover.find_clique(h, 5, removed=[(1, 2, 3, 4)]) is None


def test_kcover_best_r3():
    result = turan_cover.kcover_best(hypergraph_core.complete(7, 3), 4, 500, 1)
    assert result.certified
    assert result.size <= 15


def test_kcover_best_r5():
    result = turan_cover.kcover_best(hypergraph_core.complete(6, 5), 6, 200, 1)
    assert result.certified
    assert result.size <= 2


@pytest.mark.slow
def test_kcover_best_r5_on_seven_vertices():
    result = turan_cover.kcover_best(hypergraph_core.complete(7, 5), 6, 500, 1)
    assert result.certified
    assert result.size <= 9


def test_kcover_best_is_reproducible():
    h = hypergraph_core.complete(8, 3)
    assert turan_cover.kcover_best(h, 4, 30, 9) == turan_cover.kcover_best(h, 4, 30, 9)


def test_kcover_best_on_empty_hypergraph():
    result = turan_cover.kcover_best(Hypergraph(n=5, r=3, edges=()), 4, 3, 1)
    assert result.size == 0 and result.certified


def test_kcover_best_arguments():
    h = hypergraph_core.complete(5, 3)
    with pytest.raises(InputError):
        turan_cover.kcover_best(h, 5, 10, 1)
    with pytest.raises(InputError):
        turan_cover.kcover_best(h, 4, 0, 1)


def test_budget_not_met(monkeypatch):
    monkeypatch.setitem(turan_cover_module.BUDGETS, 2, Fraction(0))
    with pytest.raises(BudgetNotMetError) as excinfo:
        turan_cover.kcover_best(hypergraph_core.complete(3, 2), 3, 10, 1)
    assert excinfo.value.best is not None
    assert excinfo.value.best.size >= 1
    assert not excinfo.value.best.certified


@pytest.mark.slow
@pytest.mark.property_based
@pytest.mark.parametrize(
    "n, r, rule",
    [(9, 3, "kcover_lemma41"), (10, 4, "kcover_lemma42"), (8, 2, "kcover_bipartition")],
)
def test_mean_fraction_matches_probability(n, r, rule):
    h = hypergraph_core.complete(n, r)
    build = getattr(turan_cover, rule)
    total = sum(build(h, seed).size for seed in range(2000))
    mean = Fraction(total, 2000 * h.num_edges)
    assert abs(float(mean - turan_cover.membership_probability(r))) < 0.02


@pytest.mark.slow
@pytest.mark.property_based
def test_frankl_rodl_mean_fraction():
    h = hypergraph_core.complete(8, 5)
    total = 0
    for seed in range(2000):
        report = turan_cover.kcover_frankl_rodl(h, 3, seed)
        total += report.total_size
    mean = Fraction(total, 2000 * 3 * h.num_edges)
    assert abs(float(mean - Fraction(113, 243))) < 0.02
