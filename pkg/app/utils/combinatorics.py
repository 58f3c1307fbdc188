"""
Outils combinatoires sur les m-sous-ensembles de [n]

Les sous-ensembles sont des tuples strictement croissants de sommets numérotés à partir de 1.
Le rang lexicographique est compté à partir de 0.
"""
from itertools import combinations
from math import comb
from typing import Iterator, List, Sequence, Tuple


def rank_subset(subset: Sequence[int], n: int) -> int:
    """
    Rang lexicographique d'un m-sous-ensemble de [n]

    Args:
        subset: Tuple strictement croissant de sommets dans 1..n
        n: Nombre de sommets

    Returns:
        Rang dans l'ordre lexicographique de C([n], m), à partir de 0
    """
    m = len(subset)
    rank = 0
    previous = 0
    for position, vertex in enumerate(subset):
        for skipped in range(previous + 1, vertex):
            rank += comb(n - skipped, m - position - 1)
        previous = vertex
    return rank


def unrank_subset(rank: int, n: int, m: int) -> Tuple[int, ...]:
    """
    Inverse de rank_subset

    Args:
        rank: Rang lexicographique, 0 <= rank < C(n, m)
        n: Nombre de sommets
        m: Taille du sous-ensemble

    Returns:
        Le m-sous-ensemble correspondant
    """
    if not 0 <= rank < comb(n, m):
        raise ValueError(f"rang {rank} hors de [0, C({n},{m}))")
    subset: List[int] = []
    vertex = 1
    for position in range(m):
        while True:
            block = comb(n - vertex, m - position - 1)
            if rank < block:
                subset.append(vertex)
                vertex += 1
                break
            rank -= block
            vertex += 1
    return tuple(subset)


def iter_subsets(n: int, m: int) -> Iterator[Tuple[int, ...]]:
    """Tous les m-sous-ensembles de [n] en ordre lexicographique"""
    return combinations(range(1, n + 1), m)


def bits(mask: int) -> Iterator[int]:
    """Indices des bits à 1 d'un entier, par ordre croissant"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
