from fractions import Fraction
from itertools import combinations
from math import ceil, comb
from typing import Dict, Iterable, List, Optional, Sequence, Union

from loguru import logger

from app.core.exceptions import InputError, TheoremViolationError
from app.data.exact_params import exact_params
from app.data.hypergraph_core import hypergraph_core
from app.data.matching_structure import matching_classifier
from app.models.cover import CheckRecord, CoverCertificate, FractionalCover
from app.models.hypergraph import Edge, Graph, Hypergraph, MSet
from app.models.run import CoverMode
from app.models.structure import FriendKind, MatchingStructure
from app.utils.formats import format_fraction, format_mset

HALF = Fraction(1, 2)


def alpha(r: int) -> Fraction:
    """Poids de base des constructions pour r >= 5"""
    if r % 2 == 0:
        return Fraction(r + 2, 2 * (r + 1))
    return Fraction(r + 3, 2 * (r + 2))


def general_bound(r: int) -> Fraction:
    """Borne par arête du couplage : 3r/4 - r/(4(r+1)) (r pair), 3r/4 - r/(4(r+2)) (r impair)"""
    if r % 2 == 0:
        return Fraction(3 * r, 4) - Fraction(r, 4 * (r + 1))
    return Fraction(3 * r, 4) - Fraction(r, 4 * (r + 2))


class _EdgeSchedule:
    """Poids t_e attribués pour une arête e du couplage"""

    def __init__(self, e: Edge, label: str):
        self.e = e
        self.label = label
        self.weights: Dict[MSet, Fraction] = {}

    def add(self, x: Sequence[int], weight: Fraction) -> None:
        key = tuple(sorted(x))
        self.weights[key] = self.weights.get(key, Fraction(0)) + weight

    def add_all(self, xs: Iterable[Sequence[int]], weight: Fraction) -> None:
        for x in xs:
            self.add(x, weight)

    @property
    def size(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


class TuzaCoverBuilder:
    """
    Couvertures fractionnaires construites à partir d'un couplage maximum

    Chaque construction somme des poids t_e sur les arêtes e du couplage, contrôle le
    budget de chaque classe puis vérifie la couverture complète contre la borne.
    Un échec lève TheoremViolationError avec le certificat fautif.
    """

    def _finish(self, h: Hypergraph, m: int, size_of_matching: int, per_edge: Fraction,
                schedules: List[_EdgeSchedule], caps: Dict[str, Fraction], name: str) -> CoverCertificate:
        weights: Dict[MSet, Fraction] = {}
        records: List[CheckRecord] = []
        for schedule in schedules:
            for x, w in schedule.weights.items():
                weights[x] = weights.get(x, Fraction(0)) + w
            cap = caps[schedule.label]
            ok = schedule.size <= cap
            records.append(CheckRecord(
                kind="budget",
                ok=ok,
                detail=f"{format_mset(schedule.e)} ({schedule.label}) : "
                       f"{format_fraction(schedule.size)} <= {format_fraction(cap)}",
            ))
            if not ok:
                raise TheoremViolationError(
                    f"{name} : budget dépassé pour {schedule.e} ({schedule.label})"
                )
        cover = FractionalCover(ambient=h, m=m, weights=weights)
        certificate = exact_params.verify_cover(h, m, cover, per_edge * size_of_matching)
        certificate = certificate.model_copy(update={"transcript": records + certificate.transcript})
        if not certificate.verified:
            logger.error(f"{name} : couverture non vérifiée (taille {format_fraction(certificate.size)})")
            raise TheoremViolationError(f"{name} : la couverture construite n'est pas vérifiée", certificate)
        logger.info(
            f"{name} : couverture de taille {format_fraction(certificate.size)} "
            f"<= {format_fraction(certificate.bound)} vérifiée"
        )
        return certificate

    def _covering_sets(self, edges: Sequence[Edge], size: int) -> List[MSet]:
        # Appariement glouton : l'intersection de deux arêtes voisines, ou l'arête restante
        sets: List[MSet] = []
        for start in range(0, len(edges), 2):
            group = edges[start:start + 2]
            common = sorted(set(group[0]).intersection(*group[1:]))
            if len(common) < size:
                raise TheoremViolationError(f"{group} ne partagent pas {size} sommets")
            sets.append(tuple(common[:size]))
        return sets

    def _single_rule(self, structure: MatchingStructure, e: Edge, schedule: _EdgeSchedule,
                     spread: Fraction) -> None:
        # Arête de M_1 : ensemble commun w(e) à 1/2, sinon poids réparti sur l'unique arête de T1(e)
        r = structure.ambient.r
        w = matching_classifier.common_set(structure, e)
        if w is not None:
            schedule.add(w, HALF)
            return
        if len(structure.t1[e]) != 1:
            raise TheoremViolationError(f"{e} dans M_1 sans ensemble commun et avec |T1| > 1")
        schedule.add_all(combinations(structure.t1[e][0], r - 1), spread)

    def _structure(self, h: Hypergraph, r: Optional[int], name: str,
                   matching: Optional[Sequence[Edge]] = None) -> MatchingStructure:
        if r is not None and h.r != r:
            raise InputError(f"{name} attend un hypergraphe {r}-uniforme, reçu r={h.r}")
        return matching_classifier.classify(h, matching)

    def weak_cover(self, h: Hypergraph, matching: Optional[Sequence[Edge]] = None) -> CoverCertificate:
        """
        Couverture de taille au plus (3r/4)|M|

        1/2 sur chaque (r-1)-sous-ensemble des arêtes de M, puis selon la structure de T1(e) :
        1/2 sur p(e), ou 1/(2(r-1)) sur chaque (r-1)-ensemble formé de v(e) et de r-2 sommets de e.
        """
        if h.r < 2:
            raise InputError("weak_cover attend r >= 2")
        r = h.r
        structure = self._structure(h, None, "weak_cover", matching)
        schedules: List[_EdgeSchedule] = []
        for e in structure.matching:
            schedule = _EdgeSchedule(e, "M")
            schedule.add_all(combinations(e, r - 1), HALF)
            friend = structure.friend[e]
            if friend is not None and friend.kind == FriendKind.SHARED_SET:
                schedule.add(friend.shared_set, HALF)
            elif friend is not None:
                spread = Fraction(1, 2 * (r - 1))
                schedule.add_all((y + (friend.vertex,) for y in combinations(e, r - 2)), spread)
            schedules.append(schedule)
        bound = Fraction(3 * r, 4)
        return self._finish(h, r - 1, len(structure.matching), bound, schedules, {"M": bound}, "weak_cover")

    def cover_r3(self, h: Hypergraph) -> CoverCertificate:
        """Couverture par paires de taille au plus 2|M| pour un 3-graphe"""
        structure = self._structure(h, 3, "cover_r3")
        schedules: List[_EdgeSchedule] = []
        for e in structure.matching:
            i = structure.index(e)
            schedule = _EdgeSchedule(e, f"M_{i}")
            if i == 0:
                schedule.add_all(combinations(e, 2), Fraction(2, 3))
            elif i == 1:
                schedule.add_all(combinations(e, 2), HALF)
                self._single_rule(structure, e, schedule, Fraction(1, 6))
            elif i == 2:
                schedule.add_all(combinations(e, 2), HALF)
                schedule.add_all(self._covering_sets(structure.t1[e], 2), HALF)
            else:
                v = structure.friend[e].vertex
                schedule.add_all(combinations(sorted(e + (v,)), 2), Fraction(1, 3))
            schedules.append(schedule)
        caps = {f"M_{i}": Fraction(2) for i in range(4)}
        return self._finish(h, 2, len(structure.matching), Fraction(2), schedules, caps, "cover_r3")

    def cover_r4(self, h: Hypergraph) -> CoverCertificate:
        """Couverture par triplets de taille au plus (8/3)|M| pour un 4-graphe"""
        structure = self._structure(h, 4, "cover_r4")
        plus = set(structure.mplus)
        schedules: List[_EdgeSchedule] = []
        for e in structure.matching:
            i = structure.index(e)
            schedule = _EdgeSchedule(e, "M+" if e in plus else f"M_{i}")
            if e in plus:
                schedule.add_all(combinations(e, 3), Fraction(1, 3))
                schedule.add_all(self._covering_sets(structure.t1[e], 3), Fraction(2, 3))
            elif i == 0:
                schedule.add_all(combinations(e, 3), Fraction(2, 3))
            elif i == 1:
                schedule.add_all(combinations(e, 3), HALF)
                self._single_rule(structure, e, schedule, Fraction(1, 6))
            else:
                schedule.add_all(combinations(e, 3), HALF)
                schedule.add_all(self._covering_sets(structure.t1[e], 3), HALF)
                z = matching_classifier.bad_edge_sets(structure, e)
                if z:
                    schedule.add(z[0], Fraction(1, 6))
            schedules.append(schedule)
        bound = Fraction(8, 3)
        caps = {label: bound for label in ("M_0", "M_1", "M_2", "M+")}
        return self._finish(h, 3, len(structure.matching), bound, schedules, caps, "cover_r4")

    def general_caps(self, r: int) -> Dict[str, Fraction]:
        """Budget de |t_e| par classe d'arêtes du couplage"""
        a = alpha(r)
        caps = {
            "M_0": r * a,
            "M_1": Fraction(r + 1, 2),
            f"M_{r - 2}": Fraction(r, 2) + Fraction(ceil((r - 2) / 2), 2) + a - HALF,
            "M+": r * (1 - a) + comb(r, 2) * a / (r - 1),
        }
        for i in range(2, r - 2):
            caps[f"M_{i}"] = r * a + (1 - a) * ceil((r - 3) / 2)
        return caps

    def cover_general(self, h: Hypergraph) -> CoverCertificate:
        """
        Couverture pour r >= 5

        Args:
            h: Hypergraphe r-uniforme, r >= 5

        Returns:
            Certificat vérifié contre general_bound(r) |M|
        """
        if h.r < 5:
            raise InputError(f"cover_general attend r >= 5, reçu r={h.r}")
        r = h.r
        a = alpha(r)
        structure = self._structure(h, None, "cover_general")
        plus = set(structure.mplus)
        schedules: List[_EdgeSchedule] = []
        for e in structure.matching:
            i = structure.index(e)
            schedule = _EdgeSchedule(e, "M+" if e in plus else f"M_{i}")
            own = list(combinations(e, r - 1))
            if e in plus:
                v = structure.friend[e].vertex
                schedule.add_all(own, 1 - a)
                schedule.add_all((y + (v,) for y in combinations(e, r - 2)), a / (r - 1))
            elif i == 0:
                schedule.add_all(own, a)
            elif i == 1:
                schedule.add_all(own, HALF)
                self._single_rule(structure, e, schedule, Fraction(1, 2 * r))
            elif i <= r - 3:
                schedule.add_all(own, a)
                schedule.add_all(self._covering_sets(structure.t1[e], r - 1), 1 - a)
            else:
                schedule.add_all(own, HALF)
                schedule.add_all(self._covering_sets(structure.t1[e], r - 1), HALF)
                z = matching_classifier.bad_edge_sets(structure, e)
                if z:
                    schedule.add(z[0], a - HALF)
            schedules.append(schedule)
        return self._finish(h, r - 1, len(structure.matching), general_bound(r), schedules,
                            self.general_caps(r), "cover_general")

    def _two_pairs(self, e: Edge, t1: Sequence[Edge]) -> List[MSet]:
        # Une arête rencontrant e en trois sommets reçoit déjà 3/2
        targets = [f for f in t1 if len(set(f) & set(e)) == 2]
        if not targets:
            return []
        candidates = sorted({x for f in targets for x in combinations(f, 2)})

        def covers(chosen: Sequence[MSet]) -> bool:
            return all(any(set(x) <= set(f) for x in chosen) for f in targets)

        for x in candidates:
            if covers([x]):
                return [x]
        for x, y in combinations(candidates, 2):
            if covers([x, y]):
                return [x, y]
        raise TheoremViolationError(f"aucun couple de paires ne couvre T1({e})")

    def cover_42_clique(self, g: Graph) -> CoverCertificate:
        """
        2-couverture fractionnaire de taille au plus 4|M| de l'hypergraphe des K4 de g

        1/2 sur chaque paire des arêtes de M, puis 1/2 sur au plus deux paires couvrant T1(e).
        """
        h = hypergraph_core.clique_hypergraph(g, 4)
        structure = matching_classifier.classify_clique(h)
        schedules: List[_EdgeSchedule] = []
        for e in structure.matching:
            schedule = _EdgeSchedule(e, "M")
            schedule.add_all(combinations(e, 2), HALF)
            schedule.add_all(self._two_pairs(e, structure.t1[e]), HALF)
            schedules.append(schedule)
        bound = Fraction(4)
        return self._finish(h, 2, len(structure.matching), bound, schedules, {"M": bound}, "cover_42_clique")

    def build(self, source: Union[Hypergraph, Graph], mode: CoverMode) -> CoverCertificate:
        """Aiguillage par mode de construction"""
        mode = CoverMode(mode)
        if mode == CoverMode.CLIQUE42:
            if not isinstance(source, Graph):
                raise InputError("le mode clique42 attend un graphe (préfixe graph:)")
            return self.cover_42_clique(source)
        if not isinstance(source, Hypergraph):
            raise InputError(f"le mode {mode.value} attend un hypergraphe")
        if mode == CoverMode.WEAK:
            return self.weak_cover(source)
        if mode == CoverMode.R3:
            return self.cover_r3(source)
        if mode == CoverMode.R4:
            return self.cover_r4(source)
        return self.cover_general(source)


# Créer une instance du constructeur
tuza_cover = TuzaCoverBuilder()
