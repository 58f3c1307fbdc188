import argparse
import shlex
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from loguru import logger
from pydantic import ValidationError
from tqdm import tqdm

from app.core.config import settings
from app.core.exceptions import InputError, TheoremViolationError
from app.data.exact_params import exact_params
from app.data.hypergraph_core import hypergraph_core
from app.data.tuza_cover import tuza_cover
from app.models.hypergraph import Graph, Hypergraph
from app.models.run import BatchJob, CoverMode
from app.utils.formats import format_fraction, parse_fraction

COLUMNS = [
    "job", "instance", "seed", "n", "r", "edges", "m", "nu", "nustar", "tau",
    "mode", "cover_size", "bound", "margin", "taustar_over_nu", "verified",
]


class _JobParser(argparse.ArgumentParser):
    """Analyseur d'une ligne de lot : les erreurs deviennent des InputError"""

    def error(self, message: str) -> None:
        raise InputError(message)


def _seeds(text: str) -> List[int]:
    if ".." in text:
        start, _, end = text.partition("..")
        return list(range(int(start), int(end) + 1))
    return [int(text)]


def _job_parser() -> _JobParser:
    parser = _JobParser(prog="batch", add_help=False)
    parser.add_argument("source")
    parser.add_argument("--n", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--p", type=parse_fraction)
    parser.add_argument("--edges", type=int)
    parser.add_argument("--seeds", type=_seeds, default=[])
    parser.add_argument("--m", type=int)
    parser.add_argument("--mode", choices=[mode.value for mode in CoverMode])
    parser.add_argument("--tau", action="store_true")
    return parser


class BatchManager:
    """
    Gestionnaire de lots d'expériences

    Chaque ligne du fichier de lot décrit un générateur (random, graph, examples:<nom> ou
    chemin HG1) ; chaque instance produite est mesurée (nu, nu*, tau en option) puis couverte
    si un mode est demandé. Le tableau final suit l'ordre du fichier.
    """

    def __init__(self):
        """Initialiser le gestionnaire de lots"""
        self.parser = _job_parser()

    def parse_spec(self, text: str) -> List[BatchJob]:
        """
        Lire un fichier de lot

        Args:
            text: Une tâche par ligne, mêmes drapeaux que la ligne de commande ; '#' commente

        Returns:
            Les tâches validées
        """
        jobs: List[BatchJob] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                args = self.parser.parse_args(shlex.split(line))
                jobs.append(BatchJob(line=number, **vars(args)))
            except (InputError, ValidationError, ValueError) as e:
                raise InputError(f"lot, ligne {number}: {e}")
        return jobs

    def _instances(self, job: BatchJob) -> List[Dict[str, Any]]:
        if job.source == "random":
            if job.edges is not None:
                return [{"seed": seed, "instance": f"random({job.n},{job.r},{job.edges})",
                         "source": hypergraph_core.random_sized_hypergraph(job.n, job.r, job.edges, seed)}
                        for seed in job.seeds]
            return [{"seed": seed, "instance": f"random({job.n},{job.r},{format_fraction(job.p)})",
                     "source": hypergraph_core.random_hypergraph(job.n, job.r, job.p, seed)}
                    for seed in job.seeds]
        if job.source == "graph":
            return [{"seed": seed, "instance": f"graph({job.n},{format_fraction(job.p)})",
                     "source": hypergraph_core.random_graph(job.n, job.p, seed)}
                    for seed in job.seeds]
        return [{"seed": None, "instance": job.source, "source": hypergraph_core.load(job.source, job.r)}]

    def run_instance(self, job: BatchJob, instance: Dict[str, Any]) -> Dict[str, Any]:
        """
        Mesurer et couvrir une instance

        Returns:
            Une ligne du tableau ; les rationnels sont écrits p/q
        """
        source: Union[Hypergraph, Graph] = instance["source"]
        mode = job.mode
        if isinstance(source, Graph):
            h = hypergraph_core.clique_hypergraph(source, 4)
            mode = CoverMode.CLIQUE42 if mode is None else mode
            m = 2
        else:
            h = source
            m = job.m or max(h.r - 1, 1)
            if mode is not None and m != h.r - 1:
                raise InputError(f"lot, ligne {job.line}: le mode {mode.value} mesure m = r-1 = {h.r - 1}")
        nu = exact_params.matching_number(h, m).value
        nustar = exact_params.fractional_numbers(h, m).value
        tau = exact_params.cover_number(h, m).value if job.tau else None
        row: Dict[str, Any] = {
            "job": job.line,
            "instance": instance["instance"],
            "seed": instance["seed"],
            "n": h.n,
            "r": h.r,
            "edges": h.num_edges,
            "m": m,
            "nu": nu,
            "nustar": format_fraction(nustar),
            "tau": tau,
            "mode": mode.value if mode else None,
            "cover_size": None,
            "bound": None,
            "margin": None,
            "taustar_over_nu": format_fraction(nustar / nu) if nu else None,
            "verified": None,
        }
        if mode is not None:
            certificate = tuza_cover.build(source, mode)
            if certificate.size < nustar:
                raise TheoremViolationError(
                    f"couverture de taille {format_fraction(certificate.size)} < nu* = {format_fraction(nustar)}",
                    certificate,
                )
            row.update({
                "cover_size": format_fraction(certificate.size),
                "bound": format_fraction(certificate.bound),
                "margin": format_fraction(certificate.bound - certificate.size),
                "verified": certificate.verified,
            })
        return row

    def run(self, jobs: List[BatchJob], workers: Optional[int] = None) -> pd.DataFrame:
        """
        Exécuter les tâches en parallèle

        Les résultats sont rassemblés dans l'ordre du fichier ; la première violation de borne
        est propagée.
        """
        tasks = [(job, instance) for job in jobs for instance in self._instances(job)]
        logger.info(f"Lot de {len(jobs)} tâches, {len(tasks)} instances")
        if not tasks:
            return pd.DataFrame(columns=COLUMNS)
        with ThreadPoolExecutor(max_workers=workers or settings.BATCH_WORKERS) as executor:
            futures = [executor.submit(self.run_instance, job, instance) for job, instance in tasks]
            rows = [
                future.result()
                for future in tqdm(futures, desc="instances", disable=not settings.SHOW_PROGRESS)
            ]
        table = pd.DataFrame(rows, columns=COLUMNS)
        logger.info(f"Lot terminé : {len(table)} lignes")
        return table

    def summary(self, table: pd.DataFrame) -> Dict[str, Optional[Fraction]]:
        """Plus grand rapport tau*/nu et plus petite marge de borne observés (valeurs exactes)"""
        ratios = [parse_fraction(v) for v in table["taustar_over_nu"].dropna()]
        margins = [parse_fraction(v) for v in table["margin"].dropna()]
        return {
            "taustar_over_nu": max(ratios, default=None),
            "margin_min": min(margins, default=None),
        }


# Créer une instance du gestionnaire
batch_manager = BatchManager()
