from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.hypergraph import Edge


class PartitionAssignment(BaseModel):
    """
    Partition des sommets 1..n en l parts A_0..A_{l-1}

    La part d'un sommet v est parts[v].
    """
    model_config = ConfigDict(frozen=True)

    l: int = Field(..., ge=1, description="Nombre de parts")
    parts: Dict[int, int] = Field(..., description="Sommet -> indice de part")

    @model_validator(mode="after")
    def check_total(self) -> "PartitionAssignment":
        n = len(self.parts)
        if set(self.parts) != set(range(1, n + 1)):
            raise ValueError("la partition doit couvrir exactement les sommets 1..n")
        if any(not 0 <= part < self.l for part in self.parts.values()):
            raise ValueError(f"indice de part hors de 0..{self.l - 1}")
        return self

    @property
    def n(self) -> int:
        return len(self.parts)

    def counts(self, block: Sequence[int]) -> List[int]:
        """Nombre de sommets du bloc dans chaque part"""
        result = [0] * self.l
        for v in block:
            result[self.parts[v]] += 1
        return result

    def missing_parts(self, block: Sequence[int]) -> int:
        """d(B) : nombre de parts disjointes du bloc"""
        return sum(1 for count in self.counts(block) if count == 0)

    def weight(self, block: Sequence[int]) -> int:
        """w(B) = somme des i |B ∩ A_i|"""
        return sum(self.parts[v] for v in block)


class KCoverResult(BaseModel):
    """Une K_k^r-couverture et sa provenance"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cover: Tuple[Edge, ...]
    k: int
    size_bound: Fraction = Field(..., description="Budget multiplié par |H|")
    partition: Optional[PartitionAssignment] = None
    family_index: Union[int, str] = Field(..., description="j de C_j ou nom de la règle")
    verified: bool = Field(..., description="H privé de C ne contient aucun K_k^r")
    certified: bool = Field(..., description="verified et |C| <= size_bound")
    seed: Optional[int] = None

    @property
    def size(self) -> int:
        return len(self.cover)


class FranklRodlReport(BaseModel):
    """Les l familles C_0..C_{l-1} issues d'une même partition"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    families: Tuple[KCoverResult, ...]
    partition: PartitionAssignment
    total_size: int = Field(..., description="Somme des |C_j|")
    missing_total: int = Field(..., description="Somme sur i du nombre d'arêtes disjointes de A_i")
    identity_holds: bool
    expected_fraction: Fraction = Field(..., description="1/l + (1 - 1/l)^r")


class JStarReport(BaseModel):
    """Contrôle de tau^(m) <= ex_m(r, m+1) * nu*^(m)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tau: int
    nustar: Fraction
    exbound: int
    satisfied: bool
