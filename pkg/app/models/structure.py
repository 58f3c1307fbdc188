from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.models.hypergraph import Edge, Hypergraph, MSet


class FriendKind(str, Enum):
    """Structure commune des arêtes de type 1 autour d'une arête du couplage"""
    SHARED_SET = "shared_set"
    EXTERNAL_VERTEX = "external_vertex"


class Friend(BaseModel):
    """
    p(e) ou v(e)

    Quand |T1(e)| = 1 les deux descriptions s'appliquent : kind vaut SHARED_SET et
    vertex porte aussi le sommet extérieur.
    """
    model_config = ConfigDict(frozen=True)

    kind: FriendKind
    shared_set: Optional[MSet] = None
    vertex: Optional[int] = None


class MatchingStructure(BaseModel):
    """Classification complète d'un (r-1)-couplage maximum"""
    model_config = ConfigDict(frozen=True)

    ambient: Hypergraph
    matching: Tuple[Edge, ...] = Field(..., description="M, trié")
    type_of: Dict[Edge, int] = Field(..., description="Type de chaque arête (0 pour M)")
    links: Dict[Edge, Tuple[Edge, ...]] = Field(
        default_factory=dict, description="Arêtes de M rencontrées en r-1 sommets, par arête hors M"
    )
    t1: Dict[Edge, Tuple[Edge, ...]]
    indispensable: Dict[Edge, Tuple[MSet, ...]]
    witnesses: Dict[Edge, Dict[MSet, Tuple[Edge, ...]]]
    friend: Dict[Edge, Optional[Friend]]
    mi: Dict[int, Tuple[Edge, ...]] = Field(..., description="Partition M_0..M_r")
    mplus: Tuple[Edge, ...]
    mminus: Tuple[Edge, ...]
    bad: Dict[Edge, Tuple[Edge, ...]] = Field(..., description="B(e)")

    def index(self, e: Edge) -> int:
        """Nombre d'ensembles indispensables de e"""
        return len(self.indispensable[e])

    def partner(self, g: Edge, e: Edge) -> Edge:
        """L'autre arête de M reliée par l'arête de type 2 g"""
        first, second = self.links[g]
        return second if first == e else first


class CliqueMatchingStructure(BaseModel):
    """Classification d'un 2-couplage maximum d'un hypergraphe de cliques 4-uniforme"""
    model_config = ConfigDict(frozen=True)

    ambient: Hypergraph
    matching: Tuple[Edge, ...]
    type_of: Dict[Edge, int]
    t1: Dict[Edge, Tuple[Edge, ...]]
    indispensable: Dict[Edge, Tuple[MSet, ...]]
    witnesses: Dict[Edge, Dict[MSet, Tuple[Edge, ...]]]
    disjoint_pairs: Dict[Edge, Dict[Tuple[MSet, MSet], MSet]] = Field(
        default_factory=dict, description="q(p1, p2) pour les paires indispensables disjointes"
    )
