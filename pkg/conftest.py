"""
Fixtures partagées des tests de la boîte à outils
"""
import sys
from itertools import combinations

import pytest
from loguru import logger

from app.core.config import settings
from app.data.hypergraph_core import hypergraph_core


@pytest.fixture(autouse=True, scope="session")
def quiet_logs():
    """Seuls les avertissements sont journalisés pendant les tests"""
    logger.remove()
    logger.add(sys.stderr, level="WARNING")
    yield


@pytest.fixture(autouse=True)
def no_progress(monkeypatch):
    monkeypatch.setattr(settings, "SHOW_PROGRESS", False)


@pytest.fixture
def seven_edge():
    return hypergraph_core.examples("seven_edge")


@pytest.fixture
def k6_quad():
    return hypergraph_core.examples("k6_quad")


def naive_matching_number(h, m):
    """Plus grand ensemble d'arêtes deux à deux d'intersection < m, par énumération"""
    edges = list(h.edges)
    for size in range(len(edges), 0, -1):
        for chosen in combinations(edges, size):
            if all(len(set(a) & set(b)) < m for a, b in combinations(chosen, 2)):
                return size
    return 0


def naive_cover_number(h, m):
    """Plus petit ensemble de m-ensembles rencontrant chaque arête, par énumération"""
    candidates = sorted({x for edge in h.edges for x in combinations(edge, m)})
    for size in range(len(candidates) + 1):
        for chosen in combinations(candidates, size):
            picked = set(chosen)
            if all(any(x in picked for x in combinations(edge, m)) for edge in h.edges):
                return size
    return len(candidates)
