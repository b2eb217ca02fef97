import json
import shutil
import subprocess
import sys

import pytest

from tautilt.cli import main

EXE = [shutil.which("tautilt")] if shutil.which("tautilt") else [sys.executable, "-m", "tautilt.cli"]


def run(*args):
    return subprocess.run(EXE + list(args), capture_output=True, text=True)


@pytest.mark.parametrize(
    "args,code,verdict",
    [
        (["--p", "3", "--m", "3", "--n", "2", "--group", "(1 2)"], 0, "Finite"),
        (["--p", "2", "--m", "4", "--n", "3", "--group", "(1 2 3)"], 1, "Infinite"),
        (["--p", "2", "--m", "2", "--n", "3", "--group", "(1 2 3)"], 2, "Unknown"),
    ],
)
def test_decide_exit_codes(args, code, verdict):
    r = run("decide", *args, "--json")
    assert r.returncode == code
    assert json.loads(r.stdout)["verdict"] == verdict


def test_json_is_byte_stable():
    args = ["decide", "--p", "2", "--m", "4", "--n", "3", "--group", "(1 2 3)", "--witness", "--json"]
    a, b = run(*args), run(*args)
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["witness"] == [2, -2, 0]


def test_cartan_subcommand(capsys):
    assert main(["cartan", "--n", "3", "--group", "(1 2 3)", "--p", "2", "--verify-chop", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["matrix"] == [[2] * 3] * 3 and out["verified"] is True
    assert main(["cartan", "--n", "2", "--group", "(1 2)", "--p", "3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["matrix"] == [[1, 1], [1, 1]]
    assert main(["cartan", "--n", "1", "--p", "2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["matrix"] == [[1]]


def test_cartan_rejects_non_p_prime(capsys):
    assert main(["cartan", "--n", "3", "--group", "sym", "--p", "3"]) == 65


@pytest.mark.parametrize(
    "matrix,extra,code",
    [
        ([[3, 3], [3, 3]], ["--weakly-symmetric"], 1),
        ([[1, 1, 1]] * 3, ["--nakayama", "()"], 1),
        ([[1, 0], [0, 1]], [], 2),
        ({"matrix": [[1, 1], [1, 1]]}, ["--nakayama", "(1 2)"], 2),
        ([[1, 2], [3, 1]], [], 65),
    ],
)
def test_screen(tmp_path, capsys, matrix, extra, code):
    f = tmp_path / "c.json"
    f.write_text(json.dumps(matrix))
    assert main(["screen", "--cartan", str(f), *extra]) == code


def test_screen_missing_file_and_exclusive_flags(tmp_path, capsys):
    assert main(["screen", "--cartan", str(tmp_path / "nope.json")]) == 65
    f = tmp_path / "c.json"
    f.write_text("[[1]]")
    assert main(["screen", "--cartan", str(f), "--weakly-symmetric", "--nakayama", "()"]) == 64


def test_selfinjective(capsys):
    assert main(["selfinjective", "--n", "2", "--group", "(1 2)", "--p", "2", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["nondegenerate"] is True and out["rank"] == 4
    assert main(["selfinjective", "--n", "3", "--group", "sym", "--p", "5", "--max-dim", "10"]) == 4


def test_algebra_and_explore(tmp_path, capsys):
    alg = tmp_path / "x2.json"
    graph = tmp_path / "graph.json"
    assert main(["algebra", "--preset", "truncated", "--out", str(alg)]) == 0
    assert main(["explore", "--algebra", str(alg), "--budget", "10", "--out", str(graph), "--json"]) == 0
    data = json.loads(graph.read_text())
    assert data["status"] == "CompleteFinite" and len(data["vertices"]) == 2
    assert main(["algebra", "--preset", "A2", "--out", str(alg)]) == 0
    assert main(["explore", "--algebra", str(alg), "--budget", "3"]) == 3


def test_coinv(capsys):
    assert main(["coinv", "normal-form", "--n", "2", "--poly", "x2"]) == 0
    assert capsys.readouterr().out.strip() == "-x1"
    assert main(["coinv", "trace", "--n", "3", "--perm", "(1 2 3)"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["coinv", "hilbert", "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1 2 2 1"
    assert main(["coinv", "normal-form", "--n", "2"]) == 64


def test_usage_errors():
    assert run("decide", "--p", "2").returncode == 64
    assert run("bogus").returncode == 64
    assert run("decide", "--p", "2", "--m", "4", "--n", "3", "--group", "(1 5)").returncode == 65
    assert run("decide", "--p", "5", "--m", "5", "--n", "6", "--group", "sym", "--max-group-order", "100").returncode == 4
