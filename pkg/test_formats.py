"""
Tests des formats texte HG1/GR1, des rationnels et des transcriptions
"""
from fractions import Fraction

import pytest

from app.core.exceptions import HypergraphFormatError, InputError
from app.models.cover import CheckRecord, CoverCertificate, FractionalCover
from app.models.hypergraph import Hypergraph
from app.utils.formats import (
    format_certificate,
    format_fraction,
    parse_cover_transcript,
    parse_fraction,
    parse_graph,
    parse_hypergraph,
    serialize_hypergraph,
)


def test_parse_hypergraph_skips_comments_and_blank_lines():
    text = "# un exemple\n5 3\n\n3 4 5\n1 2 3  \n# fin\n"
    h = parse_hypergraph(text)
    assert (h.n, h.r) == (5, 3)
    assert h.edges == ((1, 2, 3), (3, 4, 5))


def test_parse_hypergraph_accepts_bytes_and_crlf():
    h = parse_hypergraph(b"4 2\r\n1 2\r\n3 4\r\n")
    assert h.edges == ((1, 2), (3, 4))


def test_serialize_is_canonical():
    h = parse_hypergraph("4 2\n3 4\n1 2\n")
    assert serialize_hypergraph(h) == "4 2\n1 2\n3 4\n"
    assert parse_hypergraph(serialize_hypergraph(h)) == h


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("4 2\n1 2\n1 2\n", 3, "double (déjà ligne 2)"),
        ("4 2\n1 2 3\n", 2, "arité"),
        ("4 2\n1 5\n", 2, "hors de 1..4"),
        ("4 2\n2 1\n", 2, "croissants"),
        ("4\n1 2\n", 1, "en-tête"),
        ("4 2\n1 x\n", 2, "entier"),
        ("# vide\n", 1, "absent"),
        ("", 1, "absent"),
        ("# en-tête\n2 3\n", 2, "r=3 > n=2"),
    ],
)
def test_parse_hypergraph_errors_carry_line_number(text, line, fragment):
    with pytest.raises(HypergraphFormatError) as excinfo:
        parse_hypergraph(text)
    assert excinfo.value.line == line
    assert fragment in str(excinfo.value)


def test_invalid_utf8_reports_its_line():
    with pytest.raises(HypergraphFormatError) as excinfo:
        parse_hypergraph(b"4 2\n1 2\n3 \xff\n")
    assert excinfo.value.line == 3
    with pytest.raises(HypergraphFormatError) as excinfo:
        parse_graph(b"\xfe\n")
    assert excinfo.value.line == 1


def test_graph_without_header_reports_last_line():
    with pytest.raises(HypergraphFormatError) as excinfo:
        parse_graph("# rien\n# toujours rien\n")
    assert excinfo.value.line == 2


def test_format_error_is_an_input_error():
    with pytest.raises(InputError):
        parse_hypergraph("0 0\n")


def test_empty_hypergraph_round_trip():
    h = parse_hypergraph("0 3\n")
    assert h.n == 0 and h.r == 3 and h.is_empty
    assert serialize_hypergraph(h) == "0 3\n"


def test_parse_graph():
    g = parse_graph("4\n1 2\n2 3\n# commentaire\n3 4\n")
    assert g.n == 4
    assert g.adjacency == ((1, 2), (2, 3), (3, 4))
    with pytest.raises(HypergraphFormatError) as excinfo:
        parse_graph("3\n2 1\n")
    assert excinfo.value.line == 2


def test_fractions():
    assert format_fraction(Fraction(7, 2)) == "7/2"
    assert format_fraction(3) == "3/1"
    assert format_fraction(Fraction(0)) == "0/1"
    assert parse_fraction("25/7") == Fraction(25, 7)
    assert parse_fraction(" 2 ") == Fraction(2)
    with pytest.raises(InputError):
        parse_fraction("1/0")
    with pytest.raises(InputError):
        parse_fraction("abc")


def test_certificate_transcript_can_be_read_back():
    h = Hypergraph(n=3, r=2, edges=((1, 2), (2, 3)))
    cover = FractionalCover(ambient=h, m=1, weights={(2,): Fraction(1), (1,): Fraction(1, 3)})
    certificate = CoverCertificate(
        cover=cover,
        size=Fraction(4, 3),
        bound=Fraction(2),
        valid=True,
        verified=True,
        transcript=[CheckRecord(kind="size", ok=True, detail="4/3 <= 2/1")],
    )
    text = format_certificate(certificate)
    assert text.splitlines()[-1] == "size=4/3 bound=2/1 valid=1"
    assert "w 1/3 : 1" in text
    assert parse_cover_transcript(text) == {(1,): Fraction(1, 3), (2,): Fraction(1)}


def test_failed_checks_appear_as_comments():
    certificate = CoverCertificate(
        cover=(),
        size=Fraction(0),
        bound=Fraction(0),
        valid=False,
        verified=False,
        transcript=[CheckRecord(kind="edge", ok=False, detail="1 2 couverte à 0/1")],
    )
    lines = format_certificate(certificate).splitlines()
    assert lines == ["# edge: 1 2 couverte à 0/1", "size=0/1 bound=0/1 valid=0"]


def test_transcript_without_mset_is_rejected():
    with pytest.raises(HypergraphFormatError):
        parse_cover_transcript("w 1/2 :\n")
