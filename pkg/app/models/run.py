from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from enum import Enum


class CommandType(str, Enum):
    """Commandes de la ligne de commande"""
    PARAMS = "params"
    COVER = "cover"
    KCOVER = "kcover"
    TURAN = "turan"
    JSTAR = "jstar"
    RANDOM = "random"
    VERIFY = "verify"
    BATCH = "batch"


class CoverMode(str, Enum):
    """Constructions de couvertures fractionnaires disponibles"""
    WEAK = "weak"
    R3 = "r3"
    R4 = "r4"
    GENERAL = "general"
    CLIQUE42 = "clique42"


class RunConfig(BaseModel):
    """Configuration d'une exécution, validée à partir des arguments"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: CommandType
    inputs: List[str] = Field(default_factory=list, description="Chemins ou noms intégrés")
    m: Optional[int] = Field(None, ge=1)
    n: Optional[int] = Field(None, ge=1)
    r: Optional[int] = Field(None, ge=1)
    k: Optional[int] = Field(None, ge=2)
    l: Optional[int] = Field(None, ge=1)
    trials: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = Field(None, ge=0)
    mode: Optional[CoverMode] = None
    p: Optional[Fraction] = Field(None, description="Probabilité d'arête, rationnelle")
    bound: Optional[Fraction] = Field(None, description="Borne imposée à verify")
    edges: Optional[int] = Field(None, ge=0, description="Nombre exact d'arêtes pour random")
    method: str = Field("identity", description="Méthode de calcul de T(n,k,r)")
    with_tau: bool = Field(True, description="Calculer tau^(m) dans params")
    cover_file: Optional[str] = None
    csv: Optional[str] = None

    @model_validator(mode="after")
    def check_consistency(self) -> "RunConfig":
        command = self.command
        needs_input = {CommandType.PARAMS, CommandType.COVER, CommandType.KCOVER,
                       CommandType.JSTAR, CommandType.VERIFY, CommandType.BATCH}
        if command in needs_input and not self.inputs:
            raise ValueError(f"la commande {command.value} attend une entrée")
        if command in (CommandType.PARAMS, CommandType.JSTAR, CommandType.VERIFY) and self.m is None:
            raise ValueError(f"la commande {command.value} attend --m")
        if command == CommandType.COVER and self.mode is None:
            raise ValueError("la commande cover attend --mode")
        if command == CommandType.KCOVER and self.k is None and self.l is None:
            raise ValueError("la commande kcover attend --k ou --l")
        if command == CommandType.TURAN and None in (self.n, self.k, self.r):
            raise ValueError("la commande turan attend --n, --k et --r")
        if command == CommandType.RANDOM:
            if None in (self.n, self.r) or (self.p is None and self.edges is None):
                raise ValueError("la commande random attend --n, --r et --p ou --edges")
            if self.p is not None and not 0 <= self.p <= 1:
                raise ValueError("--p doit être dans [0, 1]")
        if self.method not in ("identity", "direct"):
            raise ValueError("--method vaut identity ou direct")
        if command == CommandType.VERIFY and self.cover_file is None:
            raise ValueError("la commande verify attend --cover")
        return self


class BatchJob(BaseModel):
    """Une ligne du fichier de lot : un générateur et ses drapeaux"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    line: int = Field(..., description="Numéro de ligne dans le fichier de lot")
    source: str = Field(..., description="random, graph, examples:<nom> ou chemin HG1")
    n: Optional[int] = Field(None, ge=1)
    r: Optional[int] = Field(None, ge=1)
    p: Optional[Fraction] = None
    edges: Optional[int] = Field(None, ge=0, description="Nombre exact d'arêtes au lieu de p")
    seeds: List[int] = Field(default_factory=list)
    m: Optional[int] = Field(None, ge=1)
    mode: Optional[CoverMode] = None
    tau: bool = Field(False, description="Calculer aussi tau^(m)")

    @model_validator(mode="after")
    def check_generator(self) -> "BatchJob":
        if self.source == "random":
            if None in (self.n, self.r) or (self.p is None and self.edges is None):
                raise ValueError("random attend --n, --r et --p ou --edges")
        if self.source == "graph":
            if None in (self.n, self.p):
                raise ValueError("graph attend --n et --p")
            if self.mode not in (None, CoverMode.CLIQUE42):
                raise ValueError("graph n'accepte que le mode clique42")
        if self.source in ("random", "graph") and not self.seeds:
            raise ValueError(f"{self.source} attend --seeds")
        if self.p is not None and not 0 <= self.p <= 1:
            raise ValueError("--p doit être dans [0, 1]")
        return self
