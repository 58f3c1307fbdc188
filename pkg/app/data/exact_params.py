from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Set, Union

from loguru import logger

from app.core.config import settings
from app.core.exceptions import CapacityError, InputError, TheoremViolationError
from app.models.cover import (
    CheckRecord,
    CoverCertificate,
    CoverResult,
    FractionalCover,
    FractionalMatching,
    FractionalResult,
    MatchingResult,
    ParamsReport,
    RatioReport,
    SlacknessReport,
)
from app.models.hypergraph import Hypergraph, MSet
from app.utils.branch_and_bound import HittingSetSearch, max_independent_set
from app.utils.formats import format_fraction, format_mset
from app.utils.simplex import solve_packing_lp


class ExactParamsSolver:
    """
    Calcul exact de nu^(m), tau^(m) et nu*^(m) = tau*^(m)

    Les valeurs entières viennent de recherches par séparation et évaluation,
    la valeur fractionnaire d'un simplexe rationnel sur le programme de couverture de H^(m).
    """

    def _check_m(self, h: Hypergraph, m: int) -> None:
        if not 1 <= m <= h.r:
            raise InputError(f"m={m} hors de 1..{h.r}")

    def _check_ilp(self, h: Hypergraph) -> None:
        if h.num_edges > settings.MAX_ILP_EDGES:
            raise CapacityError(f"{h.num_edges} arêtes > MAX_ILP_EDGES={settings.MAX_ILP_EDGES}")

    def msets_of_edges(self, h: Hypergraph, m: int) -> List[MSet]:
        """m-ensembles contenus dans au moins une arête, en ordre lexicographique"""
        return sorted({x for edge in h.edges for x in combinations(edge, m)})

    def matching_number(self, h: Hypergraph, m: int) -> MatchingResult:
        """
        nu^(m) : plus grand ensemble d'arêtes deux à deux d'intersection < m

        Args:
            h: Hypergraphe
            m: 1 <= m <= r

        Returns:
            Valeur et couplage témoin (le maximum lexicographiquement premier)
        """
        self._check_m(h, m)
        self._check_ilp(h)
        by_mset: Dict[MSet, List[int]] = {}
        for index, edge in enumerate(h.edges):
            for x in combinations(edge, m):
                by_mset.setdefault(x, []).append(index)
        conflicts: List[Set[int]] = [set() for _ in h.edges]
        for members in by_mset.values():
            for a, b in combinations(members, 2):
                conflicts[a].add(b)
                conflicts[b].add(a)
        chosen = max_independent_set(conflicts)
        logger.info(f"nu^({m}) = {len(chosen)} sur {h.num_edges} arêtes")
        return MatchingResult(value=len(chosen), witness=tuple(h.edges[i] for i in chosen))

    def cover_number(self, h: Hypergraph, m: int) -> CoverResult:
        """
        tau^(m) : plus petit nombre de m-ensembles rencontrant chaque arête

        Les candidats sont les m-sous-ensembles des arêtes ; la recherche part
        d'une solution gloutonne.
        """
        self._check_m(h, m)
        self._check_ilp(h)
        if h.is_empty:
            return CoverResult(value=0, witness=())
        candidates = self.msets_of_edges(h, m)
        position = {x: i for i, x in enumerate(candidates)}
        targets = [[position[x] for x in combinations(edge, m)] for edge in h.edges]
        search = HittingSetSearch(targets, len(candidates))
        chosen = search.solve()
        logger.info(f"tau^({m}) = {len(chosen)} ({search.nodes} noeuds)")
        return CoverResult(value=len(chosen), witness=tuple(candidates[i] for i in chosen))

    def fractional_numbers(self, h: Hypergraph, m: int) -> FractionalResult:
        """
        nu*^(m) = tau*^(m) par simplexe exact

        Returns:
            Valeur, couplage fractionnaire optimal, couverture fractionnaire optimale et
            contrôle des écarts complémentaires
        """
        self._check_m(h, m)
        msets = self.msets_of_edges(h, m)
        size = len(msets) + h.num_edges
        if size > settings.MAX_LP_SIZE:
            raise CapacityError(f"programme linéaire de taille {size} > MAX_LP_SIZE={settings.MAX_LP_SIZE}")
        position = {x: i for i, x in enumerate(msets)}
        columns = [[position[x] for x in combinations(edge, m)] for edge in h.edges]
        solution = solve_packing_lp(columns, len(msets))

        primal = FractionalMatching(
            ambient=h, m=m, weights={i: w for i, w in enumerate(solution.primal) if w}
        )
        dual = FractionalCover(
            ambient=h, m=m, weights={msets[u]: w for u, w in enumerate(solution.dual) if w}
        )
        if primal.size != solution.value or dual.size != solution.value:
            raise TheoremViolationError(
                f"dualité rompue : primal {primal.size}, dual {dual.size}, valeur {solution.value}"
            )
        slackness = self._slackness(h, m, msets, columns, solution.primal, solution.dual, solution.value)
        if not (slackness.primal_tight and slackness.dual_tight):
            raise TheoremViolationError("écarts complémentaires non satisfaits par le couple optimal")
        logger.info(f"nu*^({m}) = {format_fraction(solution.value)} ({solution.pivots} pivots)")
        return FractionalResult(
            value=solution.value, primal=primal, dual=dual, slackness=slackness, pivots=solution.pivots
        )

    def _slackness(self, h: Hypergraph, m: int, msets: List[MSet], columns: List[List[int]],
                   x: Sequence[Fraction], y: Sequence[Fraction], value: Fraction) -> SlacknessReport:
        load = [Fraction(0)] * len(msets)
        for e, column in enumerate(columns):
            for u in column:
                load[u] += x[e]
        primal_tight = all(load[u] == 1 for u in range(len(msets)) if y[u] > 0)
        dual_tight = all(sum((y[u] for u in column), Fraction(0)) == 1
                         for e, column in enumerate(columns) if x[e] > 0)
        support = [u for u in range(len(msets)) if y[u] > 0]
        incidence = sum((load[u] for u in support), Fraction(0))
        return SlacknessReport(
            primal_tight=primal_tight,
            dual_tight=dual_tight,
            support_size=len(support),
            incidence_sum=incidence,
            identity_holds=len(support) == comb(h.r, m) * value,
        )

    def verify_cover(self, h: Hypergraph, m: int, c: Union[FractionalCover, Sequence[MSet]],
                     bound: Optional[Fraction] = None) -> CoverCertificate:
        """
        Vérifier l'inégalité de couverture sur chaque arête

        Args:
            h: Hypergraphe
            m: Taille des ensembles
            c: Couverture fractionnaire ou liste de m-ensembles (poids 1)
            bound: Borne à respecter ; par défaut la taille elle-même

        Returns:
            Certificat ; une couverture invalide donne verified=False, jamais d'exception
        """
        if isinstance(c, FractionalCover):
            weights = c.weights
            cover: Union[FractionalCover, tuple] = c
        else:
            msets = tuple(sorted({tuple(sorted(x)) for x in c}))
            weights = {x: Fraction(1) for x in msets}
            cover = msets
        transcript: List[CheckRecord] = []
        valid = True
        for x in weights:
            if len(x) != m:
                valid = False
                transcript.append(CheckRecord(kind="mset", ok=False, detail=f"{format_mset(x)} n'a pas {m} sommets"))
        for edge in h.edges:
            total = sum((weights.get(x, Fraction(0)) for x in combinations(edge, m)), Fraction(0))
            if total < 1:
                valid = False
                transcript.append(CheckRecord(
                    kind="edge", ok=False, detail=f"{format_mset(edge)} couverte à {format_fraction(total)}"
                ))
        size = sum(weights.values(), Fraction(0))
        bound = size if bound is None else Fraction(bound)
        within = size <= bound
        transcript.append(CheckRecord(
            kind="size", ok=within, detail=f"{format_fraction(size)} <= {format_fraction(bound)}"
        ))
        transcript.append(CheckRecord(kind="edges", ok=valid, detail=f"{h.num_edges} arêtes contrôlées"))
        return CoverCertificate(
            cover=cover, size=size, bound=bound, valid=valid, verified=valid and within, transcript=transcript
        )

    def ratio_report(self, h: Hypergraph, m: int) -> RatioReport:
        """
        nu, tau, nu* et leurs rapports exacts ; rapports indéfinis (None) quand nu = 0

        Contrôle aussi nu <= nu* <= tau <= C(r,m) nu.
        """
        nu = self.matching_number(h, m).value
        tau = self.cover_number(h, m).value
        nustar = self.fractional_numbers(h, m).value
        chain = nu <= nustar <= tau <= comb(h.r, m) * nu
        if not chain:
            raise TheoremViolationError(f"chaîne nu <= nu* <= tau <= C(r,m) nu rompue : {nu}, {nustar}, {tau}")
        if nu == 0:
            return RatioReport(nu=0, tau=tau, nustar=nustar, chain_holds=True)
        return RatioReport(
            nu=nu,
            tau=tau,
            nustar=nustar,
            tau_over_nu=Fraction(tau, nu),
            taustar_over_nu=nustar / nu,
            tau_over_nustar=tau / nustar,
            chain_holds=True,
        )

    def params(self, h: Hypergraph, m: int, with_tau: bool = True) -> ParamsReport:
        """Enregistrement complet pour la commande params"""
        return ParamsReport(
            m=m,
            matching=self.matching_number(h, m),
            fractional=self.fractional_numbers(h, m),
            cover=self.cover_number(h, m) if with_tau else None,
        )


# Créer une instance du solveur
exact_params = ExactParamsSolver()
