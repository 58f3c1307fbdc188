from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from app.core.exceptions import InvalidMatchingError, NotMaximumError, TheoremViolationError
from app.data.exact_params import exact_params
from app.data.hypergraph_core import hypergraph_core
from app.models.hypergraph import Edge, Hypergraph, MSet
from app.models.structure import CliqueMatchingStructure, Friend, FriendKind, MatchingStructure


def _meet(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted(set(a) & set(b)))


class MatchingClassifier:
    """
    Classification des arêtes relativement à un couplage maximum

    Chaque propriété structurelle démontrée (intersections des arêtes de type 1,
    dichotomie ensemble partagé / sommet extérieur, arêtes mauvaises) est contrôlée ;
    une violation lève TheoremViolationError.
    """

    def _resolve_matching(self, h: Hypergraph, k: int, matching: Optional[Sequence[Edge]],
                          assume_maximum: bool) -> Tuple[Edge, ...]:
        if matching is None:
            return exact_params.matching_number(h, k).witness
        edges = h.edge_set()
        result = tuple(sorted({tuple(sorted(e)) for e in matching}))
        for e in result:
            if e not in edges:
                raise InvalidMatchingError(f"{e} n'est pas une arête de l'hypergraphe")
        for e, f in combinations(result, 2):
            if len(set(e) & set(f)) >= k:
                raise InvalidMatchingError(f"{e} et {f} se rencontrent en au moins {k} sommets")
        if not assume_maximum:
            nu = exact_params.matching_number(h, k).value
            if len(result) < nu:
                raise NotMaximumError(f"couplage de taille {len(result)} alors que nu^({k}) = {nu}")
        return result

    def _links(self, h: Hypergraph, matching: Tuple[Edge, ...], k: int) -> Tuple[Dict[Edge, int], Dict[Edge, Tuple[Edge, ...]]]:
        in_matching = set(matching)
        type_of: Dict[Edge, int] = {}
        links: Dict[Edge, Tuple[Edge, ...]] = {}
        for f in h.edges:
            if f in in_matching:
                type_of[f] = 0
                continue
            hits = tuple(e for e in matching if len(set(f) & set(e)) >= k)
            type_of[f] = len(hits)
            links[f] = hits
        return type_of, links

    def classify(self, h: Hypergraph, matching: Optional[Sequence[Edge]] = None,
                 assume_maximum: bool = False) -> MatchingStructure:
        """
        Classer les arêtes de h relativement à un (r-1)-couplage maximum

        Args:
            h: Hypergraphe r-uniforme, r >= 2
            matching: Couplage ; par défaut le maximum lexicographiquement premier
            assume_maximum: Ne pas recalculer nu^(r-1) pour certifier la maximalité

        Returns:
            La structure complète (types, T1, ensembles indispensables, p(e)/v(e), M_i, M+, B(e))
        """
        r = h.r
        if r < 2:
            raise InvalidMatchingError("la classification demande r >= 2")
        k = r - 1
        matching = self._resolve_matching(h, k, matching, assume_maximum)
        type_of, links = self._links(h, matching, k)

        t1: Dict[Edge, Tuple[Edge, ...]] = {}
        indispensable: Dict[Edge, Tuple[MSet, ...]] = {}
        witnesses: Dict[Edge, Dict[MSet, Tuple[Edge, ...]]] = {}
        friend: Dict[Edge, Optional[Friend]] = {}
        for e in matching:
            edges = tuple(f for f in h.edges if type_of[f] == 1 and links[f] == (e,))
            t1[e] = edges
            by_set: Dict[MSet, List[Edge]] = {}
            for f in edges:
                by_set.setdefault(_meet(e, f), []).append(f)
            witnesses[e] = {x: tuple(fs) for x, fs in sorted(by_set.items())}
            indispensable[e] = tuple(sorted(by_set))
            self._check_pairwise(e, edges, k)
            friend[e] = self._friend(e, edges, r)
            self._check_external(e, edges, friend[e], indispensable[e], r)

        mi: Dict[int, Tuple[Edge, ...]] = {
            i: tuple(e for e in matching if len(indispensable[e]) == i) for i in range(r + 1)
        }
        threshold = 3 if r <= 3 else r - 1
        mplus = tuple(e for e in matching if len(indispensable[e]) >= threshold)
        mminus = tuple(e for e in matching if len(indispensable[e]) < threshold)
        for e in mplus:
            if friend[e] is None or friend[e].kind != FriendKind.EXTERNAL_VERTEX:
                raise TheoremViolationError(f"l'arête {e} de M+ n'a pas de sommet extérieur commun")

        plus = set(mplus)
        bad: Dict[Edge, List[Edge]] = {e: [] for e in matching}
        for g in h.edges:
            if type_of[g] != 2 or g not in links:
                continue
            a, b = links[g]
            if a in plus and b in plus:
                raise TheoremViolationError(f"l'arête de type 2 {g} relie deux arêtes de M+")
            if (a in plus) != (b in plus):
                bad[a].append(g)
                bad[b].append(g)

        for e in mminus:
            if not indispensable[e]:
                continue
            for g in bad[e]:
                for f in t1[e]:
                    if len(set(g) & set(f)) < k:
                        raise TheoremViolationError(
                            f"l'arête mauvaise {g} rencontre {f} en moins de {k} sommets"
                        )

        structure = MatchingStructure(
            ambient=h,
            matching=matching,
            type_of=type_of,
            links=links,
            t1=t1,
            indispensable=indispensable,
            witnesses=witnesses,
            friend=friend,
            mi=mi,
            mplus=mplus,
            mminus=mminus,
            bad={e: tuple(gs) for e, gs in bad.items()},
        )
        for e in mminus:
            if structure.index(e) >= 2 and structure.bad[e]:
                self.bad_edge_sets(structure, e)
        logger.info(
            f"Classification : |M|={len(matching)}, "
            + ", ".join(f"M_{i}={len(es)}" for i, es in mi.items() if es)
            + f", M+={len(mplus)}"
        )
        return structure

    def _check_pairwise(self, e: Edge, edges: Tuple[Edge, ...], k: int) -> None:
        for f, g in combinations(edges, 2):
            if len(set(f) & set(g)) < k:
                raise TheoremViolationError(f"{f} et {g} dans T1({e}) se rencontrent en moins de {k} sommets")

    def _friend(self, e: Edge, edges: Tuple[Edge, ...], r: int) -> Optional[Friend]:
        if not edges:
            return None
        common = set(e).intersection(*edges)
        outside = set.intersection(*(set(f) - set(e) for f in edges))
        vertex = min(outside) if len(outside) == 1 else None
        if len(common) == r - 1:
            # Une seule arête de type 1 : les deux descriptions valent
            return Friend(kind=FriendKind.SHARED_SET, shared_set=tuple(sorted(common)),
                          vertex=vertex if len(edges) == 1 else None)
        if vertex is not None:
            return Friend(kind=FriendKind.EXTERNAL_VERTEX, vertex=vertex)
        raise TheoremViolationError(f"T1({e}) n'a ni (r-1)-ensemble commun ni sommet extérieur commun")

    def _check_external(self, e: Edge, edges: Tuple[Edge, ...], friend: Optional[Friend],
                        indispensable: Tuple[MSet, ...], r: int) -> None:
        if friend is None or friend.kind != FriendKind.EXTERNAL_VERTEX or len(edges) <= 1:
            return
        if len(edges) != len(indispensable):
            raise TheoremViolationError(
                f"|T1({e})|={len(edges)} différent du nombre d'ensembles indispensables {len(indispensable)}"
            )
        for f, g in combinations(edges, 2):
            if len(set(e) & set(f) & set(g)) != r - 2:
                raise TheoremViolationError(f"{e}, {f}, {g} ne partagent pas exactement {r - 2} sommets")

    def bad_edge_sets(self, structure: MatchingStructure, e: Edge) -> Tuple[MSet, ...]:
        """
        (r-1)-ensembles g ∩ f pour g dans B(e) relié à f dans M+

        Chaque arête de B(e) contient l'un d'eux ; leur nombre est borné en fonction
        du nombre i d'ensembles indispensables de e.
        """
        r = structure.ambient.r
        family = sorted({_meet(g, structure.partner(g, e)) for g in structure.bad[e]})
        for z in family:
            if len(z) != r - 1:
                raise TheoremViolationError(f"intersection {z} de taille {len(z)} au lieu de {r - 1}")
        i = structure.index(e)
        if e in structure.mminus and i >= 2:
            # (r-2)-ensembles de e hors de tout ensemble indispensable ; vaut 1 pour i = r-2
            limit = r * (r - 1) // 2 - i * (r - 1) + i * (i - 1) // 2
            if len(family) > limit:
                raise TheoremViolationError(f"B({e}) demande {len(family)} ensembles, au plus {limit} attendus")
        return tuple(family)

    def common_set(self, structure: MatchingStructure, e: Edge) -> Optional[MSet]:
        """w(e) : (r-1)-ensemble contenu dans toutes les arêtes de T1(e) ∪ B(e), s'il existe"""
        r = structure.ambient.r
        edges = structure.t1[e] + structure.bad[e]
        if not edges:
            return None
        common = sorted(set(edges[0]).intersection(*edges[1:]))
        return tuple(common[:r - 1]) if len(common) >= r - 1 else None

    def classify_clique(self, h: Hypergraph, matching: Optional[Sequence[Edge]] = None,
                        assume_maximum: bool = False) -> CliqueMatchingStructure:
        """
        Classification d'un 2-couplage maximum d'un hypergraphe de cliques 4-uniforme

        Une arête est de type 1 si elle rencontre une seule arête de M en au moins deux
        sommets et toutes les autres en au plus un.
        """
        if h.r != 4:
            raise InvalidMatchingError("classify_clique attend un hypergraphe 4-uniforme")
        matching = self._resolve_matching(h, 2, matching, assume_maximum)
        type_of, links = self._links(h, matching, 2)

        t1: Dict[Edge, Tuple[Edge, ...]] = {}
        indispensable: Dict[Edge, Tuple[MSet, ...]] = {}
        witnesses: Dict[Edge, Dict[MSet, Tuple[Edge, ...]]] = {}
        disjoint: Dict[Edge, Dict[Tuple[MSet, MSet], MSet]] = {}
        for e in matching:
            members = tuple(f for f in h.edges if type_of[f] == 1 and links[f] == (e,))
            t1[e] = members
            self._check_pairwise(e, members, 2)
            by_pair: Dict[MSet, List[Edge]] = {}
            for f in members:
                meet = _meet(e, f)
                if len(meet) == 2:
                    by_pair.setdefault(meet, []).append(f)
            witnesses[e] = {p: tuple(fs) for p, fs in sorted(by_pair.items())}
            indispensable[e] = tuple(sorted(by_pair))
            disjoint[e] = {}
            for p1, p2 in combinations(indispensable[e], 2):
                if set(p1) & set(p2):
                    continue
                q: Optional[MSet] = None
                for f1 in witnesses[e][p1]:
                    for f2 in witnesses[e][p2]:
                        meet = _meet(f1, f2)
                        if len(meet) != 2 or set(meet) & set(e):
                            raise TheoremViolationError(
                                f"{f1} ∩ {f2} n'est pas une paire disjointe de {e}"
                            )
                        q = q or meet
                block = tuple(sorted(set(e) | set(q)))
                induced, _ = hypergraph_core.induced(h, block)
                if induced.num_edges != 15:
                    raise TheoremViolationError(f"le sous-hypergraphe induit sur {block} n'est pas complet")
                disjoint[e][(p1, p2)] = q
        return CliqueMatchingStructure(
            ambient=h,
            matching=matching,
            type_of=type_of,
            t1=t1,
            indispensable=indispensable,
            witnesses=witnesses,
            disjoint_pairs=disjoint,
        )


# Créer une instance du classificateur
matching_classifier = MatchingClassifier()
