"""Générateur pseudo-aléatoire déterministe pour des expériences reproductibles.

SplitMix64 : état de 64 bits incrémenté par la constante du nombre d'or, puis mélangé.
Chaque essai possède son propre flux, de graine seed + indice d'essai.
"""

from fractions import Fraction
from typing import Dict, List

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Générateur SplitMix64 sur 64 bits"""

    def __init__(self, seed: int = 0):
        self._seed = seed
        self._state = seed & MASK64

    @classmethod
    def for_trial(cls, seed: int, trial: int) -> "SplitMix64":
        """Flux propre à un essai"""
        return cls(seed + trial)

    @property
    def seed(self) -> int:
        return self._seed

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randbelow(self, bound: int) -> int:
        """
        Entier uniforme dans [0, bound) par réduction modulo d'un tirage sur 64 bits

        Le biais est au plus bound / 2^64, donc sous 2^-60 pour bound <= 16.
        """
        if bound <= 0:
            raise ValueError("bound doit être strictement positif")
        return self.next_u64() % bound

    def bernoulli(self, p: Fraction) -> bool:
        """Vrai avec probabilité p (exacte à 2^-64 près)"""
        p = Fraction(p)
        return self.next_u64() * p.denominator < (p.numerator << 64)

    def sample(self, population: int, k: int) -> List[int]:
        """k indices distincts de [0, population), Fisher-Yates partiel sur un dictionnaire creux"""
        if not 0 <= k <= population:
            raise ValueError(f"échantillon de {k} parmi {population} impossible")
        swapped: Dict[int, int] = {}
        chosen: List[int] = []
        for position in range(k):
            target = position + self.randbelow(population - position)
            chosen.append(swapped.get(target, target))
            swapped[target] = swapped.get(position, position)
        return chosen
