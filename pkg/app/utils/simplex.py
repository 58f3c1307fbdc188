"""
Simplexe exact en arithmétique rationnelle (règle de Bland)

Résout max c.x sous A x <= b, x >= 0 avec b >= 0, l'origine étant réalisable.
Le tableau est tenu sous forme de dictionnaire creux :

    x_B(i) = b_i - somme_j A[i][j] x_N(j)
    z      = value + somme_j c[j] x_N(j)

Les variables 0..n-1 sont structurelles, n..n+m-1 sont les écarts des contraintes.
"""
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence

from loguru import logger
from pydantic import BaseModel, ConfigDict

ZERO = Fraction(0)


class LPSolution(BaseModel):
    """Solution optimale du couple primal/dual"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Fraction
    primal: List[Fraction]
    dual: List[Fraction]
    pivots: int


class UnboundedLPError(ArithmeticError):
    """Le programme linéaire n'est pas borné"""


class SimplexTableau:
    """Dictionnaire creux du simplexe primal"""

    def __init__(
        self,
        rows: Sequence[Mapping[int, Fraction]],
        b: Sequence[Fraction],
        c: Sequence[Fraction],
    ):
        self.m = len(rows)
        self.n = len(c)
        self.A: List[Dict[int, Fraction]] = [
            {j: Fraction(a) for j, a in row.items() if a} for row in rows
        ]
        self.b = [Fraction(v) for v in b]
        self.c = [Fraction(v) for v in c]
        if len(self.b) != self.m:
            raise ValueError("b doit avoir une entrée par contrainte")
        if any(v < 0 for v in self.b):
            raise ValueError("l'origine doit être réalisable (b >= 0)")
        self.value = ZERO
        self.nb_vars = list(range(self.n))
        self.b_vars = list(range(self.n, self.n + self.m))
        self.pivots = 0

    def _entering(self) -> Optional[int]:
        # Bland : plus petit indice de variable parmi les coûts réduits positifs
        best = None
        for j, cost in enumerate(self.c):
            if cost > 0 and (best is None or self.nb_vars[j] < self.nb_vars[best]):
                best = j
        return best

    def _leaving(self, j: int) -> Optional[int]:
        best = None
        best_key = None
        for i, row in enumerate(self.A):
            a = row.get(j)
            if a is None or a <= 0:
                continue
            key = (self.b[i] / a, self.b_vars[i])
            if best_key is None or key < best_key:
                best, best_key = i, key
        return best

    def pivot(self, i: int, j: int) -> None:
        """Échanger la variable de base de la ligne i et la variable hors base j"""
        row = self.A[i]
        piv = row[j]
        new_row = {l: a / piv for l, a in row.items() if l != j}
        new_row[j] = 1 / piv
        b_i = self.b[i] / piv
        self.A[i] = new_row
        self.b[i] = b_i

        for k, other in enumerate(self.A):
            if k == i:
                continue
            f = other.pop(j, None)
            if f is None:
                continue
            for l, a in new_row.items():
                v = other.get(l, ZERO) - f * a
                if v:
                    other[l] = v
                else:
                    other.pop(l, None)
            self.b[k] -= f * b_i

        cost = self.c[j]
        self.c[j] = ZERO
        for l, a in new_row.items():
            self.c[l] -= cost * a
        self.value += cost * b_i

        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]
        self.pivots += 1

    def solve(self) -> LPSolution:
        while True:
            j = self._entering()
            if j is None:
                break
            i = self._leaving(j)
            if i is None:
                raise UnboundedLPError(f"variable {self.nb_vars[j]} non bornée")
            self.pivot(i, j)
        logger.debug(f"Simplexe terminé en {self.pivots} pivots, valeur {self.value}")

        primal = [ZERO] * self.n
        for i, var in enumerate(self.b_vars):
            if var < self.n:
                primal[var] = self.b[i]
        dual = [ZERO] * self.m
        for j, var in enumerate(self.nb_vars):
            if var >= self.n:
                dual[var - self.n] = -self.c[j]
        return LPSolution(value=self.value, primal=primal, dual=dual, pivots=self.pivots)


def solve_packing_lp(columns: Sequence[Sequence[int]], num_rows: int) -> LPSolution:
    """
    max somme x_e sous somme_{e contient u} x_e <= 1 pour chaque ligne u, x >= 0

    Args:
        columns: Pour chaque variable, les lignes où elle a un coefficient 1
        num_rows: Nombre de contraintes

    Returns:
        Solution optimale ; dual[u] est le poids de couverture de la ligne u
    """
    rows: List[Dict[int, Fraction]] = [{} for _ in range(num_rows)]
    one = Fraction(1)
    for j, column in enumerate(columns):
        for u in column:
            rows[u][j] = one
    return SimplexTableau(rows, [one] * num_rows, [one] * len(columns)).solve()
