from typing import Dict, List, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

# Un m-ensemble de sommets (tuple strictement croissant)
MSet = Tuple[int, ...]
# Une arête d'un hypergraphe r-uniforme (tuple strictement croissant)
Edge = Tuple[int, ...]


class Hypergraph(BaseModel):
    """
    Hypergraphe r-uniforme immuable sur les sommets 1..n

    Les arêtes sont stockées sous forme canonique : chaque arête est un tuple croissant
    et la liste est triée lexicographiquement, de sorte que l'égalité de deux hypergraphes
    est l'égalité de leurs listes.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Nombre de sommets")
    r: int = Field(..., ge=1, description="Uniformité")
    edges: Tuple[Edge, ...] = Field(default=(), description="Arêtes triées lexicographiquement")

    @field_validator("r")
    @classmethod
    def check_uniformity(cls, r: int, info: ValidationInfo) -> int:
        # n = 0 porte l'hypergraphe vide de toute uniformité
        n = info.data.get("n")
        if n and r > n:
            raise ValueError(f"uniformité {r} > n={n}")
        return r

    @field_validator("edges")
    @classmethod
    def canonicalize_edges(cls, edges: Tuple[Edge, ...], info: ValidationInfo) -> Tuple[Edge, ...]:
        n = info.data.get("n")
        r = info.data.get("r")
        if n is None or r is None:
            return edges
        seen: Set[Edge] = set()
        for raw in edges:
            edge = tuple(sorted(raw))
            if len(edge) != r or len(set(edge)) != r:
                raise ValueError(f"arête {raw}: {r} sommets distincts attendus")
            if edge[0] < 1 or edge[-1] > n:
                raise ValueError(f"arête {raw}: sommet hors de 1..{n}")
            if edge in seen:
                raise ValueError(f"arête {edge} en double")
            seen.add(edge)
        return tuple(sorted(seen))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def edge_set(self) -> Set[Edge]:
        return set(self.edges)

    def index_of(self) -> Dict[Edge, int]:
        """Position de chaque arête dans la liste canonique"""
        return {edge: index for index, edge in enumerate(self.edges)}


class Graph(BaseModel):
    """Graphe simple sur les sommets 1..n (ensemble de paires non ordonnées)"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Nombre de sommets")
    adjacency: Tuple[Tuple[int, int], ...] = Field(default=(), description="Paires u < v triées")

    @field_validator("adjacency")
    @classmethod
    def canonicalize_pairs(cls, pairs: Tuple[Tuple[int, int], ...], info: ValidationInfo) -> Tuple[Tuple[int, int], ...]:
        n = info.data.get("n")
        if n is None:
            return pairs
        seen: Set[Tuple[int, int]] = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"boucle sur le sommet {u}")
            pair = (min(u, v), max(u, v))
            if pair[0] < 1 or pair[1] > n:
                raise ValueError(f"paire {pair}: sommet hors de 1..{n}")
            if pair in seen:
                raise ValueError(f"paire {pair} en double")
            seen.add(pair)
        return tuple(sorted(seen))

    def neighbours(self) -> Dict[int, Set[int]]:
        result: Dict[int, Set[int]] = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.adjacency:
            result[u].add(v)
            result[v].add(u)
        return result

    def vertices(self) -> List[int]:
        return list(range(1, self.n + 1))
