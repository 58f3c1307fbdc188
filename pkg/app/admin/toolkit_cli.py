import argparse
import sys
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import List, Optional, TextIO, Union

from loguru import logger
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import HypercoverError, InputError
from app.data.batch_manager import batch_manager
from app.data.exact_params import exact_params
from app.data.hypergraph_core import hypergraph_core
from app.data.turan_cover import turan_cover
from app.data.tuza_cover import tuza_cover
from app.models.cover import FractionalCover
from app.models.hypergraph import Graph, Hypergraph
from app.models.run import CommandType, CoverMode, RunConfig
from app.utils.formats import (
    format_certificate,
    format_fraction,
    format_mset,
    format_params,
    parse_cover_transcript,
    parse_fraction,
    parse_hypergraph,
)
from app.utils.init import initialize_app

# Uniformité de l'hypergraphe vide selon le mode de couverture
MODE_UNIFORMITY = {
    CoverMode.WEAK: 2,
    CoverMode.R3: 3,
    CoverMode.R4: 4,
    CoverMode.GENERAL: 5,
    CoverMode.CLIQUE42: 4,
}


class ToolkitCLI:
    """
    Interface en ligne de commande de la boîte à outils

    Chaque commande écrit son rapport sur la sortie fournie et renvoie un code de sortie :
    0 succès, 1 entrée invalide, 2 borne démontrée non respectée.
    """

    def __init__(self, out: Optional[TextIO] = None, stdin: Optional[TextIO] = None):
        """Initialiser l'interface (sorties standard par défaut)"""
        self.out = out or sys.stdout
        self.stdin = stdin or sys.stdin

    def _write(self, text: str) -> None:
        self.out.write(text if text.endswith("\n") else text + "\n")

    def _load(self, source: str, r: Optional[int] = None) -> Union[Hypergraph, Graph]:
        if source == "-":
            return parse_hypergraph(self.stdin.read())
        return hypergraph_core.load(source, r)

    def _hypergraph(self, source: str, r: Optional[int] = None) -> Hypergraph:
        loaded = self._load(source, r)
        if not isinstance(loaded, Hypergraph):
            raise InputError(f"{source} désigne un graphe, un hypergraphe est attendu")
        return loaded

    def run_command(self, config: RunConfig) -> int:
        """
        Exécuter une commande

        Args:
            config: Configuration validée

        Returns:
            Code de sortie
        """
        handlers = {
            CommandType.PARAMS: self._handle_params,
            CommandType.COVER: self._handle_cover,
            CommandType.KCOVER: self._handle_kcover,
            CommandType.TURAN: self._handle_turan,
            CommandType.JSTAR: self._handle_jstar,
            CommandType.RANDOM: self._handle_random,
            CommandType.VERIFY: self._handle_verify,
            CommandType.BATCH: self._handle_batch,
        }
        logger.info(f"Commande {config.command.value}")
        return handlers[config.command](config)

    def _handle_params(self, config: RunConfig) -> int:
        h = self._hypergraph(config.inputs[0], config.r)
        report = exact_params.params(h, config.m, with_tau=config.with_tau)
        self._write(format_params(report))
        return 0

    def _handle_cover(self, config: RunConfig) -> int:
        source = self._load(config.inputs[0], config.r or MODE_UNIFORMITY[config.mode])
        certificate = tuza_cover.build(source, config.mode)
        self._write(format_certificate(certificate))
        return 0 if certificate.verified else 2

    def _handle_kcover(self, config: RunConfig) -> int:
        h = self._hypergraph(config.inputs[0], config.r)
        seed = settings.DEFAULT_SEED if config.seed is None else config.seed
        if config.l is not None:
            report = turan_cover.kcover_frankl_rodl(h, config.l, seed)
            for family in report.families:
                self._write(f"C_{family.family_index}: size={family.size}")
            self._write(
                f"sum={report.total_size} edges={h.num_edges} missing={report.missing_total} "
                f"identity={1 if report.identity_holds else 0} "
                f"expected={format_fraction(report.expected_fraction)}"
            )
            best = min(report.families, key=lambda result: (result.size, result.cover))
        else:
            trials = config.trials or settings.DEFAULT_TRIALS
            best = turan_cover.kcover_best(h, config.k, trials, seed)
        self._write(
            f"size={best.size} bound={format_fraction(best.size_bound)} "
            f"certified={1 if best.certified else 0} family={best.family_index} seed={best.seed}"
        )
        for edge in best.cover:
            self._write(f"C: {format_mset(edge)}")
        return 0

    def _handle_turan(self, config: RunConfig) -> int:
        n, k, r = config.n, config.k, config.r
        covering = turan_cover.covering_design_number(n, k, r, method=config.method)
        ex = comb(n, r) - covering
        self._write(f"ex({n},{k},{r})={ex}")
        self._write(f"T({n},{k},{r})={covering}")
        self._write(f"density={format_fraction(Fraction(covering, comb(n, r)))}")
        return 0

    def _handle_jstar(self, config: RunConfig) -> int:
        h = self._hypergraph(config.inputs[0], config.r)
        report = turan_cover.jstar_bound_check(h, config.m)
        self._write(
            f"tau={report.tau} nustar={format_fraction(report.nustar)} "
            f"exbound={report.exbound} satisfied={1 if report.satisfied else 0}"
        )
        return 0 if report.satisfied else 2

    def _handle_random(self, config: RunConfig) -> int:
        seed = settings.DEFAULT_SEED if config.seed is None else config.seed
        if config.edges is not None:
            h = hypergraph_core.random_sized_hypergraph(config.n, config.r, config.edges, seed)
        else:
            h = hypergraph_core.random_hypergraph(config.n, config.r, config.p, seed)
        self.out.write(hypergraph_core.serialize(h))
        return 0

    def _handle_verify(self, config: RunConfig) -> int:
        h = self._hypergraph(config.inputs[0], config.r)
        path = Path(config.cover_file)
        if not path.is_file():
            raise InputError(f"fichier introuvable: {config.cover_file}")
        weights = parse_cover_transcript(path.read_bytes())
        cover = FractionalCover(ambient=h, m=config.m, weights=weights)
        certificate = exact_params.verify_cover(h, config.m, cover, config.bound)
        self._write(format_certificate(certificate))
        return 0 if certificate.verified else 2

    def _handle_batch(self, config: RunConfig) -> int:
        path = Path(config.inputs[0])
        if not path.is_file():
            raise InputError(f"fichier introuvable: {config.inputs[0]}")
        jobs = batch_manager.parse_spec(path.read_text(encoding="utf-8"))
        table = batch_manager.run(jobs)
        if table.empty:
            self._write("(lot vide)")
        else:
            self._write(table.to_string(index=False))
            summary = batch_manager.summary(table)
            self._write(" ".join(
                f"{name}={format_fraction(value) if value is not None else '-'}" for name, value in summary.items()
            ))
        if config.csv:
            table.to_csv(config.csv, index=False)
            logger.info(f"Tableau écrit dans {config.csv}")
        return 0


def _fraction_arg(text: str):
    try:
        return parse_fraction(text)
    except InputError as e:
        raise argparse.ArgumentTypeError(str(e))

def build_parser() -> argparse.ArgumentParser:
    """Construire le parseur d'arguments"""
    parser = argparse.ArgumentParser(
        prog="hypercover",
        description="Couplages, couvertures fractionnaires et nombres de Turán exacts",
    )
    parser.add_argument("--log-level", default="", help="Niveau de journalisation (sinon LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", help="Commande à exécuter")

    params_parser = subparsers.add_parser("params", help="nu, tau et nu* exacts")
    params_parser.add_argument("input", help="Fichier HG1, examples:<nom>, empty ou -")
    params_parser.add_argument("--m", type=int, required=True)
    params_parser.add_argument("--r", type=int, help="Uniformité de l'entrée empty")
    params_parser.add_argument("--no-tau", action="store_true", help="Ne pas calculer tau^(m)")

    cover_parser = subparsers.add_parser("cover", help="Construire et vérifier une couverture fractionnaire")
    cover_parser.add_argument("input", help="Fichier HG1, examples:<nom>, graph:<nom>, empty ou -")
    cover_parser.add_argument("--mode", required=True, choices=[mode.value for mode in CoverMode])
    cover_parser.add_argument("--r", type=int, help="Uniformité de l'entrée empty")

    kcover_parser = subparsers.add_parser("kcover", help="K_{r+1}^r-couverture par partitions aléatoires")
    kcover_parser.add_argument("input")
    kcover_parser.add_argument("--k", type=int)
    kcover_parser.add_argument("--l", type=int, help="Familles de Frankl et Rödl à l parts")
    kcover_parser.add_argument("--trials", type=int)
    kcover_parser.add_argument("--seed", type=int)
    kcover_parser.add_argument("--r", type=int)

    turan_parser = subparsers.add_parser("turan", help="ex_r(n,k) et T(n,k,r)")
    turan_parser.add_argument("--n", type=int, required=True)
    turan_parser.add_argument("--k", type=int, required=True)
    turan_parser.add_argument("--r", type=int, required=True)
    turan_parser.add_argument("--method", default="identity", choices=["identity", "direct"])

    jstar_parser = subparsers.add_parser("jstar", help="Contrôle de tau^(m) <= ex_m(r,m+1) nu*^(m)")
    jstar_parser.add_argument("input")
    jstar_parser.add_argument("--m", type=int, required=True)
    jstar_parser.add_argument("--r", type=int)

    random_parser = subparsers.add_parser("random", help="Hypergraphe aléatoire reproductible au format HG1")
    random_parser.add_argument("--n", type=int, required=True)
    random_parser.add_argument("--r", type=int, required=True)
    random_parser.add_argument("--p", type=_fraction_arg)
    random_parser.add_argument("--edges", type=int)
    random_parser.add_argument("--seed", type=int)

    verify_parser = subparsers.add_parser("verify", help="Revérifier une transcription de couverture")
    verify_parser.add_argument("input")
    verify_parser.add_argument("--m", type=int, required=True)
    verify_parser.add_argument("--cover", required=True, dest="cover_file")
    verify_parser.add_argument("--bound", type=_fraction_arg)
    verify_parser.add_argument("--r", type=int)

    batch_parser = subparsers.add_parser("batch", help="Lot d'expériences, tableau des rapports")
    batch_parser.add_argument("input", help="Fichier de lot")
    batch_parser.add_argument("--csv", help="Écrire aussi le tableau au format CSV")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Convertir les arguments analysés en RunConfig validée"""
    values = {key: value for key, value in vars(args).items() if value is not None}
    values.pop("log_level", None)
    if "input" in values:
        values["inputs"] = [values.pop("input")]
    values["with_tau"] = not values.pop("no_tau", False)
    return RunConfig(**values)


def main(argv: Optional[List[str]] = None) -> int:
    """Point d'entrée principal ; renvoie le code de sortie"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0
    initialize_app(args.log_level)
    if not args.command:
        parser.print_help()
        return 1
    cli = ToolkitCLI()
    try:
        return cli.run_command(config_from_args(args))
    except HypercoverError as e:
        logger.error(f"{type(e).__name__}: {e}")
        if getattr(e, "certificate", None) is not None:
            cli.out.write(format_certificate(e.certificate))
        return e.exit_code
    except ValidationError as e:
        logger.error(f"Paramètres invalides: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
