import os
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

# Charger les variables d'environnement
load_dotenv()


class Settings(BaseSettings):
    """
    Configuration de la boîte à outils
    Les valeurs par défaut sont utilisées si les variables d'environnement ne sont pas définies
    """
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    # Paramètres d'application
    APP_NAME: str = "hypercover"
    ENV: str = os.getenv("ENV", "development")

    # Journalisation
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: str = os.getenv("LOG_FILE", "")

    # Garde-fous de capacité
    MAX_DERIVED_VERTICES: int = int(os.getenv("MAX_DERIVED_VERTICES", "100000"))
    MAX_LP_SIZE: int = int(os.getenv("MAX_LP_SIZE", "100000"))
    MAX_ILP_EDGES: int = int(os.getenv("MAX_ILP_EDGES", "5000"))
    MAX_ENUMERATED_SETS: int = int(os.getenv("MAX_ENUMERATED_SETS", "200000"))
    MAX_TURAN_RSETS: int = int(os.getenv("MAX_TURAN_RSETS", "126"))
    MAX_DIRECT_RSETS: int = int(os.getenv("MAX_DIRECT_RSETS", "20"))

    # Expériences aléatoires
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "1"))
    DEFAULT_TRIALS: int = int(os.getenv("DEFAULT_TRIALS", "200"))

    # Traitement par lots
    BATCH_WORKERS: int = int(os.getenv("BATCH_WORKERS", "4"))
    SHOW_PROGRESS: bool = os.getenv("SHOW_PROGRESS", "False").lower() in ("true", "1", "t")


# Créer une instance de la configuration
settings = Settings()
