from typing import Any, Optional


class HypercoverError(Exception):
    """Erreur de base de la boîte à outils"""
    exit_code = 1


class InputError(HypercoverError):
    """Entrée invalide (fichier, paramètres, drapeaux)"""
    exit_code = 1


class HypergraphFormatError(InputError):
    """
    Erreur de lecture d'un fichier HG1 ou GR1

    Args:
        line: Numéro de ligne (1 = première ligne physique)
        message: Description du problème
    """

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"ligne {line}: {message}")


class CapacityError(InputError):
    """Instance au-delà des garde-fous configurés"""


class UnknownExampleError(InputError):
    """Nom d'exemple intégré inconnu"""


class InvalidMatchingError(InputError):
    """Le couplage fourni n'est pas un (r-1)-couplage de l'hypergraphe"""


class NotMaximumError(InvalidMatchingError):
    """Le couplage fourni est valide mais pas de taille maximum"""


class TheoremViolationError(HypercoverError):
    """
    Une borne démontrée n'est pas respectée

    Signale un bogue d'implémentation (ou une hypothèse non satisfaite par l'entrée).
    Le certificat fautif est joint quand il existe.
    """
    exit_code = 2

    def __init__(self, message: str, certificate: Optional[Any] = None):
        self.certificate = certificate
        super().__init__(message)


class BudgetNotMetError(HypercoverError):
    """Aucun essai n'a produit de K-couverture dans le budget"""
    exit_code = 2

    def __init__(self, message: str, best: Optional[Any] = None):
        self.best = best
        super().__init__(message)
