import re
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from loguru import logger

from app.core.config import settings
from app.core.exceptions import CapacityError, InputError, UnknownExampleError
from app.models.hypergraph import Edge, Graph, Hypergraph
from app.utils.combinatorics import iter_subsets, rank_subset, unrank_subset
from app.utils.formats import parse_graph, parse_hypergraph, serialize_hypergraph
from app.utils.rng import SplitMix64

SEVEN_EDGE = ((1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 5, 6), (1, 3, 6, 7),
              (2, 4, 6, 7), (1, 4, 5, 7), (2, 3, 5, 7))

_NAME_PATTERN = re.compile(r"^([a-z_0-9]+?)(?:\((\d+(?:\s*,\s*\d+)*)\))?$")


class HypergraphCore:
    """
    Construction et transformation d'hypergraphes r-uniformes

    Regroupe la lecture/écriture, l'hypergraphe dérivé H^(m), les générateurs
    et le catalogue d'instances nommées.
    """

    def parse(self, text: Union[str, bytes]) -> Hypergraph:
        return parse_hypergraph(text)

    def serialize(self, h: Hypergraph) -> str:
        return serialize_hypergraph(h)

    def _check_enumeration(self, count: int, what: str) -> None:
        if count > settings.MAX_ENUMERATED_SETS:
            raise CapacityError(f"{what}: {count} ensembles dépassent MAX_ENUMERATED_SETS={settings.MAX_ENUMERATED_SETS}")

    def derive(self, h: Hypergraph, m: int) -> Hypergraph:
        """
        Hypergraphe dérivé H^(m)

        Args:
            h: Hypergraphe r-uniforme
            m: Taille des ensembles, 1 <= m <= r

        Returns:
            Hypergraphe C(r,m)-uniforme sur C(n,m) sommets ; le sommet d'identifiant
            rang+1 est le m-ensemble de rang lexicographique rang
        """
        if not 1 <= m <= h.r:
            raise InputError(f"m={m} hors de 1..{h.r}")
        vertices = comb(h.n, m)
        if vertices > settings.MAX_DERIVED_VERTICES:
            raise CapacityError(f"C({h.n},{m})={vertices} sommets dérivés > {settings.MAX_DERIVED_VERTICES}")
        edges = [
            tuple(sorted(rank_subset(x, h.n) + 1 for x in combinations(edge, m)))
            for edge in h.edges
        ]
        assert len(set(edges)) == len(edges), "arêtes dérivées confondues"
        logger.debug(f"H^({m}) : {vertices} sommets, {len(edges)} arêtes")
        return Hypergraph(n=vertices, r=comb(h.r, m), edges=tuple(edges))

    def derived_label(self, h: Hypergraph, m: int, vertex: int) -> Tuple[int, ...]:
        """m-ensemble désigné par un sommet de H^(m)"""
        return unrank_subset(vertex - 1, h.n, m)

    def complete(self, n: int, r: int) -> Hypergraph:
        if not 1 <= r <= n:
            raise InputError(f"complete({n},{r}) : 1 <= r <= n attendu")
        self._check_enumeration(comb(n, r), f"complete({n},{r})")
        return Hypergraph(n=n, r=r, edges=tuple(iter_subsets(n, r)))

    def empty(self, n: int, r: int) -> Hypergraph:
        if 0 < n < r:
            raise InputError(f"empty({n},{r}) : r <= n attendu")
        return Hypergraph(n=n, r=r, edges=())

    def complement(self, h: Hypergraph) -> Hypergraph:
        self._check_enumeration(comb(h.n, h.r), "complément")
        present = h.edge_set()
        edges = tuple(x for x in iter_subsets(h.n, h.r) if x not in present)
        return Hypergraph(n=h.n, r=h.r, edges=edges)

    def clique_hypergraph(self, g: Graph, r: int) -> Hypergraph:
        """
        Hypergraphe H(G, r) des r-cliques de g

        Args:
            g: Graphe
            r: Taille des cliques, r >= 2

        Returns:
            Hypergraphe r-uniforme sur les sommets de g
        """
        if r < 2:
            raise InputError("clique_hypergraph attend r >= 2")
        neighbours = g.neighbours()
        cliques: List[Edge] = []

        def extend(clique: List[int], candidates: List[int]) -> None:
            if len(clique) == r:
                cliques.append(tuple(clique))
                return
            for index, v in enumerate(candidates):
                if len(clique) + len(candidates) - index < r:
                    break
                extend(clique + [v], [u for u in candidates[index + 1:] if u in neighbours[v]])

        extend([], g.vertices())
        return Hypergraph(n=g.n if g.n >= r else 0, r=r, edges=tuple(cliques))

    def induced(self, h: Hypergraph, x: Sequence[int]) -> Tuple[Hypergraph, Tuple[int, ...]]:
        """
        Sous-hypergraphe induit par x, sommets renumérotés par rang dans x

        Returns:
            (hypergraphe induit, labels) où labels[i-1] est l'identifiant d'origine du sommet i
        """
        labels = tuple(sorted(set(x)))
        if labels and (labels[0] < 1 or labels[-1] > h.n):
            raise InputError(f"sommets hors de 1..{h.n}")
        position = {v: i + 1 for i, v in enumerate(labels)}
        edges = tuple(
            tuple(position[v] for v in edge) for edge in h.edges if all(v in position for v in edge)
        )
        # Moins de r sommets : hypergraphe vide sans sommet
        size = len(labels) if len(labels) >= h.r else 0
        return Hypergraph(n=size, r=h.r, edges=edges), labels

    def examples(self, name: str) -> Hypergraph:
        """
        Instances nommées

        Args:
            name: k6_quad, seven_edge, simplex(r), triangles(k), complete(n,r) ou empty(n,r)

        Returns:
            L'hypergraphe correspondant
        """
        match = _NAME_PATTERN.match(name.strip().lower())
        if not match:
            raise UnknownExampleError(f"exemple inconnu: {name!r}")
        base = match.group(1)
        args = [int(a) for a in match.group(2).split(",")] if match.group(2) else []
        if base == "k6_quad" and not args:
            return self.complete(6, 4)
        if base == "seven_edge" and not args:
            return Hypergraph(n=7, r=4, edges=SEVEN_EDGE)
        if base == "simplex" and len(args) == 1 and args[0] >= 1:
            return self.complete(args[0] + 1, args[0])
        if base == "triangles" and len(args) == 1:
            return self.clique_hypergraph(self.complete_graph(args[0]), 3)
        if base == "complete" and len(args) == 2:
            return self.complete(*args)
        if base == "empty" and len(args) == 2:
            return self.empty(*args)
        raise UnknownExampleError(f"exemple inconnu: {name!r}")

    def complete_graph(self, n: int) -> Graph:
        return Graph(n=n, adjacency=tuple(combinations(range(1, n + 1), 2)))

    def cycle_graph(self, n: int) -> Graph:
        if n < 3:
            raise InputError("un cycle a au moins 3 sommets")
        return Graph(n=n, adjacency=tuple((i, i % n + 1) for i in range(1, n + 1)))

    def graph_examples(self, name: str) -> Graph:
        """
        Graphes nommés : K<n>, C<n>, two_k6 (deux K6 partageant un sommet)
        """
        key = name.strip()
        if re.fullmatch(r"[Kk]\d+", key):
            return self.complete_graph(int(key[1:]))
        if re.fullmatch(r"[Cc]\d+", key):
            return self.cycle_graph(int(key[1:]))
        if key.lower() == "two_k6":
            first = list(combinations(range(1, 7), 2))
            second = list(combinations(range(6, 12), 2))
            return Graph(n=11, adjacency=tuple(first + second))
        raise UnknownExampleError(f"graphe inconnu: {name!r}")

    def load(self, source: str, r: Optional[int] = None) -> Union[Hypergraph, Graph]:
        """
        Résoudre une désignation d'entrée

        Args:
            source: examples:<nom>, graph:<nom ou chemin GR1>, empty, ou chemin d'un fichier HG1
            r: Uniformité de l'hypergraphe vide

        Returns:
            Un hypergraphe, ou un graphe pour le préfixe graph:
        """
        if source.startswith("examples:"):
            return self.examples(source[len("examples:"):])
        if source.startswith("graph:"):
            name = source[len("graph:"):]
            path = Path(name)
            if path.is_file():
                return parse_graph(path.read_bytes())
            return self.graph_examples(name)
        if source == "empty":
            return self.empty(0, r or 1)
        path = Path(source)
        if not path.is_file():
            raise InputError(f"fichier introuvable: {source}")
        logger.debug(f"Lecture de {path}")
        return self.parse(path.read_bytes())

    def random_hypergraph(self, n: int, r: int, p: Fraction, seed: int) -> Hypergraph:
        """Chaque r-ensemble est retenu indépendamment avec probabilité p"""
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise InputError("p doit être dans [0, 1]")
        if not 1 <= r <= n:
            raise InputError(f"1 <= r <= n attendu (n={n}, r={r})")
        self._check_enumeration(comb(n, r), "hypergraphe aléatoire")
        rng = SplitMix64(seed)
        edges = tuple(x for x in iter_subsets(n, r) if rng.bernoulli(p))
        return Hypergraph(n=n, r=r, edges=edges)

    def random_sized_hypergraph(self, n: int, r: int, size: int, seed: int) -> Hypergraph:
        """Un sous-ensemble uniforme de size r-ensembles"""
        if not 1 <= r <= n:
            raise InputError(f"1 <= r <= n attendu (n={n}, r={r})")
        total = comb(n, r)
        if size > total:
            raise InputError(f"{size} arêtes demandées, seulement {total} r-ensembles")
        rng = SplitMix64(seed)
        ranks = rng.sample(total, size)
        return Hypergraph(n=n, r=r, edges=tuple(unrank_subset(rank, n, r) for rank in ranks))

    def random_graph(self, n: int, p: Fraction, seed: int) -> Graph:
        rng = SplitMix64(seed)
        pairs = tuple(pair for pair in combinations(range(1, n + 1), 2) if rng.bernoulli(Fraction(p)))
        return Graph(n=n, adjacency=pairs)


# Créer une instance du service
hypergraph_core = HypergraphCore()
