from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.models.hypergraph import Edge, Hypergraph, MSet


class FractionalMatching(BaseModel):
    """
    m-couplage fractionnaire : poids rationnels positifs sur les arêtes

    Les arêtes sont désignées par leur indice dans la liste canonique de l'hypergraphe.
    Les poids nuls sont omis.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ambient: Hypergraph
    m: int = Field(..., ge=1)
    weights: Dict[int, Fraction] = Field(default_factory=dict)

    @field_validator("weights")
    @classmethod
    def nonnegative(cls, weights: Dict[int, Fraction]) -> Dict[int, Fraction]:
        if any(w < 0 for w in weights.values()):
            raise ValueError("poids négatif dans un couplage fractionnaire")
        return {index: w for index, w in weights.items() if w != 0}

    @property
    def size(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


class FractionalCover(BaseModel):
    """m-couverture fractionnaire : poids rationnels positifs sur des m-ensembles (creux)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ambient: Hypergraph
    m: int = Field(..., ge=1)
    weights: Dict[MSet, Fraction] = Field(default_factory=dict)

    @field_validator("weights")
    @classmethod
    def nonnegative(cls, weights: Dict[MSet, Fraction]) -> Dict[MSet, Fraction]:
        if any(w < 0 for w in weights.values()):
            raise ValueError("poids négatif dans une couverture fractionnaire")
        return {tuple(sorted(x)): w for x, w in weights.items() if w != 0}

    @property
    def size(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    @classmethod
    def integral(cls, ambient: Hypergraph, m: int, msets: List[MSet]) -> "FractionalCover":
        """Couverture entière vue comme poids 0/1"""
        return cls(ambient=ambient, m=m, weights={tuple(sorted(x)): Fraction(1) for x in msets})


class CheckRecord(BaseModel):
    """Ligne de transcription d'une vérification"""
    kind: str = Field(..., description="Nature du contrôle (edge, size, budget, ...)")
    ok: bool
    detail: str = ""


class CoverCertificate(BaseModel):
    """
    Certificat d'une couverture

    verified vaut True si et seulement si la couverture est valide et size <= bound.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cover: Union[FractionalCover, Tuple[MSet, ...]]
    size: Fraction
    bound: Fraction
    valid: bool
    verified: bool
    transcript: List[CheckRecord] = Field(default_factory=list)


class MatchingResult(BaseModel):
    """Valeur de nu^(m) et un couplage qui l'atteint"""
    value: int
    witness: Tuple[Edge, ...] = ()


class CoverResult(BaseModel):
    """Valeur de tau^(m) et une couverture qui l'atteint"""
    value: int
    witness: Tuple[MSet, ...] = ()


class SlacknessReport(BaseModel):
    """Contrôles des écarts complémentaires entre le primal et le dual retournés"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    primal_tight: bool = Field(..., description="Contraintes primales saturées là où le dual est positif")
    dual_tight: bool = Field(..., description="Contraintes duales saturées là où le primal est positif")
    support_size: int = Field(..., description="Nombre de m-ensembles de poids dual positif")
    incidence_sum: Fraction = Field(..., description="Somme sur le support des poids primaux incidents")
    identity_holds: bool = Field(..., description="support_size == C(r,m) * nu*")


class FractionalResult(BaseModel):
    """Valeur nu* = tau* avec le couple optimal primal/dual"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: Fraction
    primal: FractionalMatching
    dual: FractionalCover
    slackness: SlacknessReport
    pivots: int = 0


class RatioReport(BaseModel):
    """Paramètres exacts d'une instance et leurs rapports (None quand nu = 0)"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    nu: int
    tau: int
    nustar: Fraction
    tau_over_nu: Optional[Fraction] = None
    taustar_over_nu: Optional[Fraction] = None
    tau_over_nustar: Optional[Fraction] = None
    chain_holds: bool = True


class ParamsReport(BaseModel):
    """Enregistrement consommé par la commande params"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    m: int
    matching: MatchingResult
    fractional: FractionalResult
    cover: Optional[CoverResult] = None
