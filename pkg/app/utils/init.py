import os
import sys

from loguru import logger

from app.core.config import settings


def initialize_app(level: str = "") -> None:
    """
    Initialiser la journalisation

    - sortie d'erreur au niveau LOG_LEVEL (ou level s'il est fourni),
    - fichier tournant si LOG_FILE est renseigné.

    La sortie standard reste réservée aux rapports.
    """
    logger.remove()
    logger.add(sys.stderr, level=level or settings.LOG_LEVEL)

    if settings.LOG_FILE:
        directory = os.path.dirname(settings.LOG_FILE)
        # Créer le répertoire des logs s'il n'existe pas
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        logger.add(
            settings.LOG_FILE,
            rotation="10 MB",
            retention="1 month",
            compression="zip",
            level="DEBUG",
        )
    logger.debug(f"{settings.APP_NAME} initialisé (env={settings.ENV})")
