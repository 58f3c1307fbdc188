"""
Formats texte : HG1 (hypergraphes), GR1 (graphes), rationnels p/q et transcriptions de certificats
"""
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple, Union

from app.core.exceptions import HypergraphFormatError, InputError
from app.models.cover import CoverCertificate, FractionalCover, ParamsReport
from app.models.hypergraph import Edge, Graph, Hypergraph, MSet


def _decode(text: Union[str, bytes]) -> List[str]:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise HypergraphFormatError(text.count(b"\n", 0, exc.start) + 1, "UTF-8 invalide")
    lines = text.split("\n")
    # Le saut de ligne final ne termine qu'une ligne
    if lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def _integers(fields: List[str], number: int) -> List[int]:
    try:
        return [int(field) for field in fields]
    except ValueError:
        raise HypergraphFormatError(number, f"entier attendu: {' '.join(fields)!r}")


def parse_hypergraph(text: Union[str, bytes]) -> Hypergraph:
    """
    Lire un hypergraphe au format HG1

    Args:
        text: Contenu du fichier (str ou bytes UTF-8)

    Returns:
        L'hypergraphe sous forme canonique
    """
    header: Optional[Tuple[int, int]] = None
    edges: List[Edge] = []
    seen: Dict[Edge, int] = {}
    lines = _decode(text)
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2 or not all(field.isdigit() for field in fields):
                raise HypergraphFormatError(number, "en-tête mal formé, 'n r' attendu")
            n, r = int(fields[0]), int(fields[1])
            if r < 1:
                raise HypergraphFormatError(number, "uniformité r >= 1 attendue")
            if 0 < n < r:
                raise HypergraphFormatError(number, f"en-tête mal formé, r={r} > n={n}")
            header = (n, r)
            continue
        n, r = header
        vertices = _integers(fields, number)
        if len(vertices) != r:
            raise HypergraphFormatError(number, f"arité {len(vertices)} au lieu de {r}")
        if any(v < 1 or v > n for v in vertices):
            raise HypergraphFormatError(number, f"sommet hors de 1..{n}")
        if any(a >= b for a, b in zip(vertices, vertices[1:])):
            raise HypergraphFormatError(number, "sommets non strictement croissants")
        edge = tuple(vertices)
        if edge in seen:
            raise HypergraphFormatError(number, f"arête en double (déjà ligne {seen[edge]})")
        seen[edge] = number
        edges.append(edge)
    if header is None:
        raise HypergraphFormatError(max(len(lines), 1), "en-tête 'n r' absent")
    return Hypergraph(n=header[0], r=header[1], edges=tuple(edges))


def serialize_hypergraph(h: Hypergraph) -> str:
    """Écrire un hypergraphe au format HG1 canonique (sans commentaires)"""
    body = "".join(" ".join(str(v) for v in edge) + "\n" for edge in h.edges)
    return f"{h.n} {h.r}\n{body}"


def parse_graph(text: Union[str, bytes]) -> Graph:
    """Lire un graphe au format GR1 : 'n' puis une paire 'u v' (u < v) par ligne"""
    n: Optional[int] = None
    pairs: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    lines = _decode(text)
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1 or not fields[0].isdigit():
                raise HypergraphFormatError(number, "en-tête mal formé, 'n' attendu")
            n = int(fields[0])
            continue
        if len(fields) != 2:
            raise HypergraphFormatError(number, "paire 'u v' attendue")
        u, v = _integers(fields, number)
        if not 1 <= u < v <= n:
            raise HypergraphFormatError(number, f"paire invalide {u} {v} (1 <= u < v <= {n})")
        if (u, v) in seen:
            raise HypergraphFormatError(number, "paire en double")
        seen.add((u, v))
        pairs.append((u, v))
    if n is None:
        raise HypergraphFormatError(max(len(lines), 1), "en-tête 'n' absent")
    return Graph(n=n, adjacency=tuple(pairs))


def format_fraction(value: Union[Fraction, int]) -> str:
    """Rationnel exact sous la forme p/q"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"rationnel invalide: {text!r}")


def format_mset(x: MSet) -> str:
    return " ".join(str(v) for v in x)


def format_certificate(certificate: CoverCertificate) -> str:
    """
    Transcription d'un certificat

    Une ligne 'w p/q : v1 v2 ...' par m-ensemble pondéré, les contrôles en échec en
    commentaires, puis 'size=p/q bound=p/q valid=0|1'.
    """
    if isinstance(certificate.cover, FractionalCover):
        weights = certificate.cover.weights
    else:
        weights = {x: Fraction(1) for x in certificate.cover}
    lines = [f"w {format_fraction(w)} : {format_mset(x)}" for x, w in sorted(weights.items())]
    lines.extend(f"# {record.kind}: {record.detail}" for record in certificate.transcript if not record.ok)
    lines.append(
        f"size={format_fraction(certificate.size)} bound={format_fraction(certificate.bound)} "
        f"valid={1 if certificate.verified else 0}"
    )
    return "\n".join(lines) + "\n"


def parse_cover_transcript(text: Union[str, bytes]) -> Dict[MSet, Fraction]:
    """Relire les lignes 'w p/q : v1 v2 ...' d'une transcription ; le reste est ignoré"""
    weights: Dict[MSet, Fraction] = {}
    for number, raw in enumerate(_decode(text), start=1):
        line = raw.strip()
        if not line.startswith("w "):
            continue
        head, _, tail = line[2:].partition(":")
        if not tail.strip():
            raise HypergraphFormatError(number, "ligne de poids sans m-ensemble")
        x = tuple(sorted(_integers(tail.split(), number)))
        weights[x] = weights.get(x, Fraction(0)) + parse_fraction(head)
    return weights


def format_params(report: ParamsReport) -> str:
    """Enregistrement 'nu=.. tau=.. nustar=p/q' suivi des témoins"""
    head = [f"nu={report.matching.value}"]
    if report.cover is not None:
        head.append(f"tau={report.cover.value}")
    head.append(f"nustar={format_fraction(report.fractional.value)}")
    lines = [" ".join(head)]
    lines.extend(f"M: {format_mset(edge)}" for edge in report.matching.witness)
    if report.cover is not None:
        lines.extend(f"T: {format_mset(x)}" for x in report.cover.witness)
    h = report.fractional.primal.ambient
    lines.extend(
        f"s {format_fraction(w)} : {format_mset(h.edges[index])}"
        for index, w in sorted(report.fractional.primal.weights.items())
    )
    lines.extend(
        f"t {format_fraction(w)} : {format_mset(x)}" for x, w in sorted(report.fractional.dual.weights.items())
    )
    return "\n".join(lines) + "\n"
