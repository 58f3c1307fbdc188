from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger
from tqdm import tqdm

from app.core.config import settings
from app.core.exceptions import BudgetNotMetError, CapacityError, InputError, TheoremViolationError
from app.data.exact_params import exact_params
from app.models.hypergraph import Edge, Hypergraph
from app.models.turan import FranklRodlReport, JStarReport, KCoverResult, PartitionAssignment
from app.utils.branch_and_bound import HittingSetSearch
from app.utils.combinatorics import iter_subsets
from app.utils.formats import format_fraction
from app.utils.rng import SplitMix64

# Budget t(r) de K_{r+1}^r-couverture garanti pour chaque uniformité
BUDGETS: Dict[int, Fraction] = {2: Fraction(1, 2), 3: Fraction(4, 9), 4: Fraction(3, 8)}
LARGE_R_BUDGET = Fraction(113, 243)
FRANKL_RODL_PARTS = 3

PartitionSource = Union[PartitionAssignment, int]


def budget(r: int) -> Fraction:
    return BUDGETS.get(r, LARGE_R_BUDGET)


def _bipartition_rule(counts: Sequence[int]) -> bool:
    # les deux sommets dans la même part
    return max(counts) == 2


def _lemma41_rule(counts: Sequence[int]) -> bool:
    if max(counts) == 3:
        return True
    return any(counts[i] == 2 and counts[(i + 1) % 3] == 1 for i in range(3))


def _lemma42_rule(counts: Sequence[int]) -> bool:
    pattern = sorted(counts, reverse=True)
    if pattern[0] == 4 or pattern == [1, 1, 1, 1] or pattern[:2] == [2, 2]:
        return True
    for i in range(4):
        if counts[i] == 3 and (counts[(i + 1) % 4] == 1 or counts[(i + 2) % 4] == 1):
            return True
    return False


# règle, nombre de parts, nom de la règle
_RULES: Dict[int, Tuple[Callable[[Sequence[int]], bool], int, str]] = {
    2: (_bipartition_rule, 2, "bipartition"),
    3: (_lemma41_rule, 3, "lemma41"),
    4: (_lemma42_rule, 4, "lemma42"),
}


def _frankl_rodl_member(counts: Sequence[int], j: int) -> bool:
    l = len(counts)
    d = sum(1 for count in counts if count == 0)
    w = sum(i * count for i, count in enumerate(counts))
    return (w + j) % l <= d


class TuranCoverBuilder:
    """
    Nombres de Turán exacts, designs couvrants et K-couvertures par partitions aléatoires

    Les nombres T(n,k,r) sont obtenus par la recherche de transversal minimum sur les
    k-ensembles de [n] ; ex_r(n,k) = C(n,r) - T(n,k,r).
    """

    def __init__(self):
        self._designs: Dict[Tuple[int, int, int], Tuple[Edge, ...]] = {}

    # ------------------------------------------------------------------
    # Nombres de Turán et designs couvrants
    # ------------------------------------------------------------------

    def _check_triple(self, n: int, k: int, r: int, ceiling: int) -> None:
        if not 1 <= r < k <= n:
            raise InputError(f"1 <= r < k <= n attendu (n={n}, k={k}, r={r})")
        if comb(n, r) > ceiling:
            raise CapacityError(f"C({n},{r})={comb(n, r)} r-ensembles dépassent la limite {ceiling}")

    def covering_design(self, n: int, k: int, r: int) -> Tuple[Edge, ...]:
        """
        Plus petit ensemble de r-ensembles de [n] rencontrant chaque k-ensemble

        Args:
            n: Nombre de sommets
            k: Taille des ensembles à couvrir
            r: Taille des blocs, r < k <= n

        Returns:
            Blocs triés ; la recherche part du minorant n T(n-1,k,r)/(n-r) et s'arrête dès qu'il est atteint
        """
        self._check_triple(n, k, r, settings.MAX_TURAN_RSETS)
        key = (n, k, r)
        if key in self._designs:
            return self._designs[key]
        rsets = list(iter_subsets(n, r))
        position = {x: i for i, x in enumerate(rsets)}
        targets = [[position[x] for x in combinations(block, r)] for block in iter_subsets(n, k)]
        if n == k:
            lower = 1
        else:
            previous = len(self.covering_design(n - 1, k, r))
            lower = -(-n * previous // (n - r))
        search = HittingSetSearch(targets, len(rsets))
        chosen = search.solve(lower_bound=lower, symmetric_root=True)
        design = tuple(rsets[i] for i in chosen)
        logger.debug(f"T({n},{k},{r}) = {len(design)} (minorant {lower}, {search.nodes} noeuds)")
        self._designs[key] = design
        return design

    def _direct_covering_number(self, n: int, k: int, r: int) -> int:
        # Énumération naïve des familles de r-ensembles par taille croissante
        self._check_triple(n, k, r, settings.MAX_DIRECT_RSETS)
        blocks = list(iter_subsets(n, k))
        full = (1 << len(blocks)) - 1
        masks = [
            sum(1 << b for b, block in enumerate(blocks) if set(x) <= set(block))
            for x in iter_subsets(n, r)
        ]
        for size in range(len(masks) + 1):
            for chosen in combinations(masks, size):
                covered = 0
                for mask in chosen:
                    covered |= mask
                if covered == full:
                    return size
        raise TheoremViolationError(f"aucun design couvrant pour ({n},{k},{r})")

    def covering_design_number(self, n: int, k: int, r: int, method: str = "identity") -> int:
        """
        T(n,k,r)

        Args:
            method: "identity" (recherche de transversal, T = C(n,r) - ex_r(n,k)) ou "direct"
                (énumération naïve indépendante, réservée aux plus petits cas)
        """
        if method == "direct":
            return self._direct_covering_number(n, k, r)
        if method != "identity":
            raise InputError(f"méthode inconnue: {method!r}")
        return comb(n, r) - self.turan_number(n, r, k)

    def turan_number(self, n: int, r: int, k: int) -> int:
        """ex_r(n,k) : nombre maximum de r-ensembles de [n] sans K_k^r"""
        value = comb(n, r) - len(self.covering_design(n, k, r))
        logger.info(f"ex_{r}({n},{k}) = {value}")
        return value

    def extremal_hypergraph(self, n: int, r: int, k: int) -> Hypergraph:
        """Complément d'un design couvrant minimum : un r-graphe sans K_k^r de taille ex_r(n,k)"""
        design = set(self.covering_design(n, k, r))
        return Hypergraph(n=n, r=r, edges=tuple(x for x in iter_subsets(n, r) if x not in design))

    # ------------------------------------------------------------------
    # K-couvertures
    # ------------------------------------------------------------------

    def random_partition(self, n: int, l: int, seed: int) -> PartitionAssignment:
        """Chaque sommet reçoit une part uniforme dans 0..l-1"""
        if l < 1:
            raise InputError("l >= 1 attendu")
        rng = SplitMix64(seed)
        return PartitionAssignment(l=l, parts={v: rng.randbelow(l) for v in range(1, n + 1)})

    def _partition(self, h: Hypergraph, source: PartitionSource, l: int) -> Tuple[PartitionAssignment, Optional[int]]:
        if isinstance(source, PartitionAssignment):
            if source.n != h.n or source.l != l:
                raise InputError(f"partition en {l} parts de 1..{h.n} attendue")
            return source, None
        return self.random_partition(h.n, l, source), source

    def find_clique(self, h: Hypergraph, k: int, removed: Sequence[Edge] = ()) -> Optional[Edge]:
        """
        Un K_k^r contenu dans h privé de removed, ou None

        Chaque K_k^r contient une arête restante ; on étend chacune par (k-r)-ensembles.
        """
        r = h.r
        remaining = h.edge_set() - {tuple(sorted(e)) for e in removed}
        vertices = range(1, h.n + 1)
        for edge in sorted(remaining):
            others = [v for v in vertices if v not in edge]
            for extra in combinations(others, k - r):
                block = tuple(sorted(edge + extra))
                if all(x in remaining for x in combinations(block, r)):
                    return block
        return None

    def _result(self, h: Hypergraph, k: int, cover: List[Edge], bound: Fraction,
                partition: PartitionAssignment, family: Union[int, str], seed: Optional[int]) -> KCoverResult:
        clique = self.find_clique(h, k, cover)
        if clique is not None:
            raise TheoremViolationError(f"{family} : K_{k}^{h.r} non couvert sur {clique}")
        size_bound = bound * h.num_edges
        return KCoverResult(
            cover=tuple(cover),
            k=k,
            size_bound=size_bound,
            partition=partition,
            family_index=family,
            verified=True,
            certified=len(cover) <= size_bound,
            seed=seed,
        )

    def _rule_cover(self, h: Hypergraph, r: int, source: PartitionSource) -> KCoverResult:
        if h.r != r:
            raise InputError(f"hypergraphe {r}-uniforme attendu, reçu r={h.r}")
        rule, l, name = _RULES[r]
        partition, seed = self._partition(h, source, l)
        cover = [e for e in h.edges if rule(partition.counts(e))]
        return self._result(h, r + 1, cover, BUDGETS[r], partition, name, seed)

    def kcover_bipartition(self, h: Hypergraph, partition: PartitionSource) -> KCoverResult:
        """Couverture des triangles d'un graphe : arêtes internes à une des deux parts"""
        return self._rule_cover(h, 2, partition)

    def kcover_lemma41(self, h: Hypergraph, partition: PartitionSource) -> KCoverResult:
        """
        K_4^3-couverture par partition en trois parts V_0, V_1, V_2 (V_3 = V_0)

        Une arête est retenue si ses trois sommets sont dans une même part, ou si elle a
        deux sommets dans V_i et un dans V_{i+1}.
        """
        return self._rule_cover(h, 3, partition)

    def kcover_lemma42(self, h: Hypergraph, partition: PartitionSource) -> KCoverResult:
        """
        K_5^4-couverture par partition en quatre parts

        Motifs retenus : 4 ; 1+1+1+1 ; 2+2 ; 3 dans V_i et 1 dans V_{i+1} ou V_{i+2}.
        """
        return self._rule_cover(h, 4, partition)

    def kcover_frankl_rodl(self, h: Hypergraph, l: int, partition: PartitionSource) -> FranklRodlReport:
        """
        Les l familles C_j = { e : (w(e) + j) mod l <= d(e) }

        Args:
            h: Hypergraphe r-uniforme, r >= 2
            l: Nombre de parts
            partition: Partition explicite ou graine

        Returns:
            Les familles, toutes vérifiées, et le contrôle de somme_j |C_j| = |H| + somme_i |A_i|
        """
        if h.r < 2 or l < 1:
            raise InputError("kcover_frankl_rodl attend r >= 2 et l >= 1")
        r = h.r
        partition, seed = self._partition(h, partition, l)
        expected = Fraction(1, l) + (1 - Fraction(1, l)) ** r
        counts = {e: partition.counts(e) for e in h.edges}
        families = tuple(
            self._result(h, r + 1, [e for e in h.edges if _frankl_rodl_member(counts[e], j)],
                         expected, partition, j, seed)
            for j in range(l)
        )
        total = sum(result.size for result in families)
        missing = sum(1 for i in range(l) for e in h.edges if counts[e][i] == 0)
        identity = total == h.num_edges + missing
        if not identity:
            raise TheoremViolationError(f"somme des |C_j| = {total} au lieu de {h.num_edges + missing}")
        return FranklRodlReport(
            families=families,
            partition=partition,
            total_size=total,
            missing_total=missing,
            identity_holds=identity,
            expected_fraction=expected,
        )

    def membership_probability(self, r: int, l: Optional[int] = None) -> Fraction:
        """
        Probabilité exacte qu'une arête entre dans la couverture, par énumération des l^r
        affectations de ses sommets (moyenne sur j pour les familles de Frankl et Rödl)
        """
        if r in _RULES and l is None:
            rule, parts, _ = _RULES[r]
            hits = sum(1 for assignment in product(range(parts), repeat=r)
                       if rule([assignment.count(i) for i in range(parts)]))
            return Fraction(hits, parts ** r)
        l = l or FRANKL_RODL_PARTS
        hits = 0
        for assignment in product(range(l), repeat=r):
            counts = [assignment.count(i) for i in range(l)]
            hits += sum(1 for j in range(l) if _frankl_rodl_member(counts, j))
        return Fraction(hits, l * l ** r)

    def _trial(self, h: Hypergraph, seed: int) -> KCoverResult:
        if h.r in _RULES:
            return self._rule_cover(h, h.r, seed)
        report = self.kcover_frankl_rodl(h, FRANKL_RODL_PARTS, seed)
        return min(report.families, key=lambda result: (result.size, result.cover))

    def kcover_best(self, h: Hypergraph, k: int, trials: int, seed: int) -> KCoverResult:
        """
        Meilleure K_{r+1}^r-couverture sur plusieurs partitions tirées

        L'essai t utilise le flux de graine seed + t. La plus petite couverture (puis la
        première dans l'ordre lexicographique) est retenue ; elle est certifiée si elle
        tient dans le budget t(r)|H|.

        Raises:
            BudgetNotMetError: aucun essai ne tient dans le budget
        """
        if h.r < 2 or k != h.r + 1:
            raise InputError(f"kcover_best attend r >= 2 et k = r+1 (r={h.r}, k={k})")
        if trials < 1:
            raise InputError("au moins un essai attendu")
        target = budget(h.r)
        best: Optional[KCoverResult] = None
        for trial in tqdm(range(trials), desc="essais", disable=not settings.SHOW_PROGRESS):
            result = self._trial(h, SplitMix64.for_trial(seed, trial).seed)
            if best is None or (result.size, result.cover) < (best.size, best.cover):
                best = result
        size_bound = target * h.num_edges
        best = best.model_copy(update={"size_bound": size_bound, "certified": best.size <= size_bound})
        if not best.certified:
            logger.warning(f"Budget {format_fraction(target)} non atteint : meilleure taille {best.size}")
            raise BudgetNotMetError(
                f"aucun des {trials} essais ne donne une couverture de taille <= {format_fraction(size_bound)}",
                best,
            )
        logger.info(f"K_{k}^{h.r}-couverture de taille {best.size} <= {format_fraction(size_bound)}")
        return best

    def jstar_bound_check(self, h: Hypergraph, m: int) -> JStarReport:
        """Contrôle de tau^(m)(h) <= ex_m(r, m+1) nu*^(m)(h), pour 2 <= m < r"""
        if not 2 <= m < h.r:
            raise InputError(f"2 <= m < r attendu (m={m}, r={h.r})")
        exbound = self.turan_number(h.r, m, m + 1)
        tau = exact_params.cover_number(h, m).value
        nustar = exact_params.fractional_numbers(h, m).value
        satisfied = tau <= exbound * nustar
        if not satisfied:
            logger.error(f"tau^({m}) = {tau} > {exbound} * {format_fraction(nustar)}")
        return JStarReport(tau=tau, nustar=nustar, exbound=exbound, satisfied=satisfied)


# Créer une instance du service
turan_cover = TuranCoverBuilder()
