"""
Point d'entrée de hypercover

    python main.py params examples:seven_edge --m 2
    python main.py cover graph:K6 --mode clique42
    python main.py turan --n 6 --k 4 --r 3
"""
import sys

from dotenv import load_dotenv

from app.admin.toolkit_cli import main

# Charger les variables d'environnement
load_dotenv()

if __name__ == "__main__":
    sys.exit(main())
