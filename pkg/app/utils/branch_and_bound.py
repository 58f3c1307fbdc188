"""
Recherches exactes par séparation et évaluation

- stable maximum d'un graphe de conflits (couplages),
- ensemble transversal minimum (couvertures, nombres de Turán).

Les deux recherches sont déterministes : les candidats sont essayés dans l'ordre des indices.
"""
from typing import List, Optional, Sequence, Set, Tuple

from loguru import logger

from app.utils.combinatorics import bits

INFEASIBLE = 1 << 30


def _components(adjacency: Sequence[Set[int]]) -> List[List[int]]:
    seen = [False] * len(adjacency)
    components = []
    for start in range(len(adjacency)):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        component = []
        while stack:
            v = stack.pop()
            component.append(v)
            for u in adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        components.append(sorted(component))
    return components


def _clique_cover_bound(candidates: Tuple[int, ...], adjacency: Sequence[Set[int]]) -> int:
    # Une partition gloutonne en cliques majore la taille d'un stable
    cliques: List[List[int]] = []
    for v in candidates:
        neighbours = adjacency[v]
        for clique in cliques:
            if all(u in neighbours for u in clique):
                clique.append(v)
                break
        else:
            cliques.append([v])
    return len(cliques)


def _component_mis(vertices: List[int], adjacency: Sequence[Set[int]]) -> List[int]:
    best: Tuple[int, ...] = ()
    stack: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = [((), tuple(vertices))]
    nodes = 0
    while stack:
        chosen, candidates = stack.pop()
        nodes += 1
        if not candidates:
            if len(chosen) > len(best):
                best = chosen
            continue
        if len(chosen) + _clique_cover_bound(candidates, adjacency) <= len(best):
            continue
        v, rest = candidates[0], candidates[1:]
        neighbours = adjacency[v]
        if any(u in neighbours for u in rest):
            # exclusion explorée après l'inclusion
            stack.append((chosen, rest))
        stack.append((chosen + (v,), tuple(u for u in rest if u not in neighbours)))
    logger.debug(f"Stable maximum de taille {len(best)} sur {len(vertices)} sommets ({nodes} noeuds)")
    return list(best)


def max_independent_set(adjacency: Sequence[Set[int]]) -> List[int]:
    """
    Stable maximum lexicographiquement premier

    Args:
        adjacency: Voisinage de chaque sommet 0..N-1 du graphe de conflits

    Returns:
        Indices triés d'un stable maximum ; parmi les stables maximum, celui qui
        privilégie les plus petits indices
    """
    solution: List[int] = []
    for component in _components(adjacency):
        solution.extend(_component_mis(component, adjacency))
    return sorted(solution)


class HittingSetSearch:
    """
    Transversal minimum : choisir des candidats de sorte que chaque cible en contienne un

    Séparation sur la cible non couverte ayant le moins de candidats disponibles ; la i-ème
    branche prend le i-ème candidat et interdit les précédents. Évaluation par le maximum
    d'un empilement glouton de cibles aux candidats disjoints et d'une borne de degré.
    """

    def __init__(self, targets: Sequence[Sequence[int]], num_candidates: int):
        """
        Args:
            targets: Pour chaque cible, les indices des candidats qui la touchent
            num_candidates: Nombre total de candidats
        """
        self.targets = [tuple(sorted(set(target))) for target in targets]
        self.num_candidates = num_candidates
        self.target_masks = [sum(1 << c for c in target) for target in self.targets]
        self.hit_masks = [0] * num_candidates
        for t, target in enumerate(self.targets):
            for c in target:
                self.hit_masks[c] |= 1 << t
        self.nodes = 0

    def greedy(self) -> List[int]:
        """Solution gloutonne : le candidat touchant le plus de cibles restantes, plus petit indice d'abord"""
        uncovered = (1 << len(self.targets)) - 1
        chosen: List[int] = []
        while uncovered:
            best, best_gain = None, 0
            for c in range(self.num_candidates):
                gain = (self.hit_masks[c] & uncovered).bit_count()
                if gain > best_gain:
                    best, best_gain = c, gain
            if best is None:
                raise ValueError("une cible n'a aucun candidat")
            chosen.append(best)
            uncovered &= ~self.hit_masks[best]
        return sorted(chosen)

    def _lower_bound(self, uncovered: int, banned: int) -> int:
        available = ~banned
        used = 0
        packing = 0
        for t in bits(uncovered):
            mask = self.target_masks[t] & available
            if not mask:
                return INFEASIBLE
            if not mask & used:
                used |= mask
                packing += 1
        remaining = uncovered.bit_count()
        top = 0
        for c in range(self.num_candidates):
            if not (banned >> c) & 1:
                top = max(top, (self.hit_masks[c] & uncovered).bit_count())
        degree = -(-remaining // top) if top else INFEASIBLE
        return max(packing, degree)

    def _select_target(self, uncovered: int, banned: int) -> int:
        available = ~banned
        best, best_count = -1, INFEASIBLE
        for t in bits(uncovered):
            count = (self.target_masks[t] & available).bit_count()
            if count < best_count:
                best, best_count = t, count
        return best

    def solve(self, lower_bound: int = 0, symmetric_root: bool = False,
              initial: Optional[List[int]] = None) -> List[int]:
        """
        Transversal de taille minimum

        Args:
            lower_bound: Minorant connu ; la recherche s'arrête dès qu'il est atteint
            symmetric_root: Les candidats de la première cible sont équivalents par symétrie,
                un seul est essayé à la racine
            initial: Solution de départ (sinon la solution gloutonne)

        Returns:
            Indices triés des candidats retenus
        """
        if not self.targets:
            return []
        best: Tuple[int, ...] = tuple(initial if initial is not None else self.greedy())
        if len(best) <= lower_bound:
            return sorted(best)
        full = (1 << len(self.targets)) - 1
        stack: List[Tuple[Tuple[int, ...], int, int, bool]] = [((), full, 0, True)]
        self.nodes = 0
        while stack:
            chosen, uncovered, banned, root = stack.pop()
            self.nodes += 1
            if not uncovered:
                if len(chosen) < len(best):
                    best = chosen
                    logger.debug(f"Transversal amélioré : {len(best)}")
                    if len(best) <= lower_bound:
                        break
                continue
            if len(chosen) + self._lower_bound(uncovered, banned) >= len(best):
                continue
            target = 0 if root and symmetric_root else self._select_target(uncovered, banned)
            options = [c for c in self.targets[target] if not (banned >> c) & 1]
            if root and symmetric_root:
                options = options[:1]
            children = []
            ban = banned
            for c in options:
                children.append((chosen + (c,), uncovered & ~self.hit_masks[c], ban, False))
                ban |= 1 << c
            stack.extend(reversed(children))
        logger.debug(f"Transversal minimum {len(best)} ({self.nodes} noeuds)")
        return sorted(best)
