"""
Tests de l'interface en ligne de commande
"""
from io import StringIO

import pytest

from app.admin.toolkit_cli import ToolkitCLI, build_parser, config_from_args, main
from app.models.run import RunConfig


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_params_seven_edge(capsys):
    code, out = _run(capsys, "params", "examples:seven_edge", "--m", "2")
    assert code == 0
    assert out.splitlines()[0] == "nu=1 tau=4 nustar=7/2"


def test_params_k6_quad(capsys):
    code, out = _run(capsys, "params", "examples:k6_quad", "--m", "2")
    assert code == 0
    assert out.splitlines()[0] == "nu=1 tau=3 nustar=5/2"


def test_params_without_tau(capsys):
    code, out = _run(capsys, "params", "examples:simplex(4)", "--m", "3", "--no-tau")
    assert code == 0
    assert out.splitlines()[0] == "nu=1 nustar=5/2"


def test_params_from_stdin():
    out = StringIO()
    cli = ToolkitCLI(out=out, stdin=StringIO("3 2\n1 2\n1 3\n2 3\n"))
    code = cli.run_command(RunConfig(command="params", inputs=["-"], m=1))
    assert code == 0
    assert out.getvalue().splitlines()[0] == "nu=1 tau=2 nustar=3/2"


def test_cover_r3(capsys):
    code, out = _run(capsys, "cover", "examples:simplex(3)", "--mode", "r3")
    assert code == 0
    assert out.splitlines()[-1] == "size=2/1 bound=2/1 valid=1"


def test_cover_clique42(capsys):
    code, out = _run(capsys, "cover", "graph:K6", "--mode", "clique42")
    assert code == 0
    assert out.splitlines()[-1] == "size=7/2 bound=4/1 valid=1"


def test_cover_empty(capsys):
    code, out = _run(capsys, "cover", "empty", "--mode", "general")
    assert code == 0
    assert out.splitlines()[-1] == "size=0/1 bound=0/1 valid=1"


def test_verify_round_trip(capsys, tmp_path):
    _, transcript = _run(capsys, "cover", "examples:simplex(3)", "--mode", "r3")
    path = tmp_path / "cover.txt"
    path.write_text(transcript, encoding="utf-8")

    code, out = _run(capsys, "verify", "examples:simplex(3)", "--m", "2", "--cover", str(path))
    assert code == 0
    assert out.splitlines()[-1] == "size=2/1 bound=2/1 valid=1"

    code, out = _run(capsys, "verify", "examples:simplex(3)", "--m", "2", "--cover", str(path), "--bound", "1")
    assert code == 2
    assert out.splitlines()[-1] == "size=2/1 bound=1/1 valid=0"


def test_verify_reports_uncovered_edges(capsys, tmp_path):
    path = tmp_path / "cover.txt"
    path.write_text("w 1 : 1 2\n", encoding="utf-8")
    code, out = _run(capsys, "verify", "examples:simplex(3)", "--m", "2", "--cover", str(path))
    assert code == 2
    assert out.count("# edge:") == 2


def test_turan(capsys):
    code, out = _run(capsys, "turan", "--n", "4", "--k", "3", "--r", "2")
    assert code == 0
    assert out.splitlines() == ["ex(4,3,2)=4", "T(4,3,2)=2", "density=1/3"]


def test_turan_density_is_exact(capsys):
    code, out = _run(capsys, "turan", "--n", "6", "--k", "4", "--r", "2")
    assert code == 0
    assert out.splitlines() == ["ex(6,4,2)=12", "T(6,4,2)=3", "density=1/5"]


def test_turan_direct(capsys):
    code, out = _run(capsys, "turan", "--n", "4", "--k", "4", "--r", "3", "--method", "direct")
    assert code == 0
    assert out.splitlines()[:2] == ["ex(4,4,3)=3", "T(4,4,3)=1"]


def test_jstar(capsys):
    code, out = _run(capsys, "jstar", "examples:seven_edge", "--m", "2")
    assert code == 0
    assert out.strip() == "tau=4 nustar=7/2 exbound=4 satisfied=1"


def test_kcover(capsys):
    code, out = _run(capsys, "kcover", "examples:complete(7,3)", "--k", "4", "--trials", "200", "--seed", "1")
    assert code == 0
    head = out.splitlines()[0]
    assert "certified=1" in head
    size = int(head.split()[0].split("=")[1])
    assert size <= 15
    assert len([line for line in out.splitlines() if line.startswith("C: ")]) == size


def test_kcover_frankl_rodl(capsys):
    code, out = _run(capsys, "kcover", "examples:complete(8,5)", "--l", "3", "--seed", "4")
    assert code == 0
    lines = out.splitlines()
    assert [line.split(":")[0] for line in lines[:3]] == ["C_0", "C_1", "C_2"]
    assert "identity=1" in lines[3]
    assert "expected=113/243" in lines[3]


def test_random_is_deterministic(capsys):
    argv = ("random", "--n", "10", "--r", "3", "--p", "1/4", "--seed", "42")
    _, first = _run(capsys, *argv)
    _, second = _run(capsys, *argv)
    assert first == second
    assert first.startswith("10 3\n")


def test_random_extremes(capsys):
    _, out = _run(capsys, "random", "--n", "5", "--r", "3", "--p", "0", "--seed", "1")
    assert out == "5 3\n"
    _, out = _run(capsys, "random", "--n", "5", "--r", "3", "--p", "1", "--seed", "1")
    assert len(out.splitlines()) == 11
    _, out = _run(capsys, "random", "--n", "6", "--r", "3", "--edges", "4", "--seed", "1")
    assert len(out.splitlines()) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["params", "absent.hg1", "--m", "2"],
        ["params", "examples:inconnu", "--m", "2"],
        ["params", "examples:seven_edge", "--m", "9"],
        ["random", "--n", "5", "--r", "3", "--p", "3/2"],
        ["random", "--n", "5", "--r", "3", "--p", "x"],
        ["turan", "--n", "4", "--k", "3"],
        ["cover", "graph:K6", "--mode", "r4"],
        [],
    ],
)
def test_input_errors_exit_with_one(capsys, argv):
    code, _ = _run(capsys, *argv)
    assert code == 1


def test_malformed_file_exits_with_one(capsys, tmp_path):
    path = tmp_path / "bad.hg1"
    path.write_text("4 2\n1 2\n1 2\n", encoding="utf-8")
    code, _ = _run(capsys, "params", str(path), "--m", "1")
    assert code == 1


def test_invalid_utf8_file_exits_with_one(capsys, tmp_path):
    path = tmp_path / "bad.hg1"
    path.write_bytes(b"3 2\n1 \xff\n")
    code, _ = _run(capsys, "params", str(path), "--m", "1")
    assert code == 1


def test_uniformity_above_vertex_count_exits_with_one(capsys, tmp_path):
    path = tmp_path / "bad.hg1"
    path.write_text("2 3\n", encoding="utf-8")
    code, out = _run(capsys, "params", str(path), "--m", "1")
    assert code == 1
    assert out == ""


def test_config_from_args():
    args = build_parser().parse_args(["params", "examples:k6_quad", "--m", "2", "--no-tau"])
    config = config_from_args(args)
    assert config.inputs == ["examples:k6_quad"]
    assert config.with_tau is False


def test_batch(capsys, tmp_path):
    spec = tmp_path / "lot.txt"
    spec.write_text(
        "# lot d'essai\n"
        "random --n 7 --r 3 --edges 10 --seeds 1..3 --mode r3\n"
        "examples:k6_quad --m 2 --tau\n",
        encoding="utf-8",
    )
    csv = tmp_path / "lot.csv"
    code, out = _run(capsys, "batch", str(spec), "--csv", str(csv))
    assert code == 0
    assert "taustar_over_nu=" in out.splitlines()[-1]
    assert len(csv.read_text(encoding="utf-8").splitlines()) == 5


def test_empty_batch(capsys, tmp_path):
    spec = tmp_path / "vide.txt"
    spec.write_text("# rien\n\n", encoding="utf-8")
    code, out = _run(capsys, "batch", str(spec))
    assert code == 0
    assert out.strip() == "(lot vide)"


def test_invalid_batch_line(capsys, tmp_path):
    spec = tmp_path / "faux.txt"
    spec.write_text("random --n 7 --r 3\n", encoding="utf-8")
    code, _ = _run(capsys, "batch", str(spec))
    assert code == 1
