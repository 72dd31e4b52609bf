import json

import pytest
from conftest import K23_MATRIX, k23, path

from metricsplit.cli import run


@pytest.fixture
def files(tmp_path):
    (tmp_path / "k23.graph").write_text(k23().to_text())
    (tmp_path / "p3.graph").write_text(path(3).to_text())
    (tmp_path / "bad.metric").write_text("metric 3\n0 1 2\n1 0 1\n2 2 0\n")
    (tmp_path / "p3.metric").write_text("metric 3\n0 1 2\n1 0 1\n2 1 0\n")
    return tmp_path


def run_json(capsys, *argv):
    code = run([*map(str, argv), "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_analyze_k23(files, capsys):
    code, out = run_json(capsys, "analyze", files / "k23.graph")
    assert code == 0
    assert out["distance_matrix"] == [[str(x) for x in row] for row in K23_MATRIX]
    assert out["inertia"] == [2, 0, 3]
    assert out["splits"] == [] and out["totally_decomposable"] is False
    assert list(out) == ["n", "distance_matrix", "eigenvalues", "inertia", "tol", "splits", "residue", "totally_decomposable"]


def test_analyze_p3_embed(files, capsys):
    code, out = run_json(capsys, "analyze", files / "p3.graph", "--embed")
    assert code == 0
    assert out["splits"] == [{"S": [1], "alpha": "1"}, {"S": [1, 2], "alpha": "1"}]
    assert out["residue"] == [["0"] * 3] * 3
    assert out["l1_embedding"] == [["1", "1"], ["0", "1"], ["0", "0"]]


def test_analyze_human_output(files, capsys):
    assert run(["analyze", str(files / "p3.graph")]) == 0
    assert "totally_decomposable: True" in capsys.readouterr().out


def test_schema_stable(files, capsys):
    _, a = run_json(capsys, "analyze", files / "k23.graph")
    _, b = run_json(capsys, "analyze", files / "k23.graph")
    assert list(a) == list(b) and a == b


def test_inertia_bad_matrix(files, capsys):
    assert run(["inertia", "--matrix", str(files / "bad.metric")]) == 1
    err = capsys.readouterr().err
    assert "symmetric" in err


def test_inertia_matrix(files, capsys):
    code, out = run_json(capsys, "inertia", "--matrix", files / "p3.metric")
    assert code == 0 and out["inertia"] == [1, 0, 2] and out["perron"]["passed"]


def test_inertia_tol_override(files, capsys):
    code, out = run_json(capsys, "inertia", files / "k23.graph", "--tol", "1")
    assert code == 0 and out["tol"] == 1.0 and out["inertia"] == [1, 1, 3]


def test_minor_k23(files, capsys):
    code, out = run_json(capsys, "minor", files / "k23.graph", "--pattern", "k23")
    assert code == 0 and out["present"]
    assert out["certificate"]["branch"] == {str(i): i for i in range(1, 6)}
    code, out = run_json(capsys, "minor", files / "p3.graph")
    assert not out["present"] and out["certificate"] is None


def test_minor_multipartite(files, capsys):
    code, out = run_json(capsys, "minor", files / "k23.graph", "--pattern", "k23s:2")
    assert code == 0 and not out["present"]


def test_minor_bad_pattern(files, capsys):
    assert run(["minor", str(files / "k23.graph"), "--pattern", "k5"]) == 2


def test_distminor(files, capsys):
    code, out = run_json(capsys, "distminor", files / "k23.graph")
    assert out["witness"] == {"indices": [1, 2, 3, 4, 5], "c": "1", "lambda0": "1", "lambdas": []}


def test_adversary(files, capsys):
    code, out = run_json(capsys, "adversary", files / "k23.graph")
    assert code == 0 and out["inertia"] == [2, 0, 3]
    code, out = run_json(capsys, "adversary", files / "p3.graph")
    assert code == 0 and out["present"] is False


def test_verify(files, capsys):
    code, out = run_json(capsys, "verify", files / "k23.graph")
    assert code == 0 and out["passed"]


def test_search_weak(tmp_path, capsys):
    viol = tmp_path / "v.ndjson"
    code, out = run_json(capsys, "search", "--conjecture", "weak", "--n", 5, "--samples", 30, "--violations", viol)
    assert code == 0 and out["bound"] == 2 and out["violations"] == []
    assert "records" not in out


def test_search_strong_family(tmp_path, capsys):
    code, out = run_json(
        capsys, "search", "--conjecture", "strong", "--family", "multipartite", "--parts", "2,3,3", "--k", 2,
        "--samples", 5, "--violations", tmp_path / "v.ndjson",
    )
    assert code == 0 and out["extra"]["has_minor"] and out["extra"]["adversarial_i_plus"] == 3


def test_search_lp(capsys):
    code, out = run_json(capsys, "search", "--conjecture", "lp", "--n", 6, "--p", "inf", "--samples", 5)
    assert code == 0 and out["params"]["p"] == "inf"


def test_gen(tmp_path, capsys):
    target = tmp_path / "c5.graph"
    assert run(["gen", "--family", "cycle", "--n", "5", "-o", str(target)]) == 0
    assert target.read_text().startswith("graph 5\n")
    assert capsys.readouterr().out.startswith("graph 5")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["bogus"], 2),
        ([], 2),
        (["analyze", "--nope"], 2),
        (["search", "--conjecture", "weird"], 2),
        (["analyze", "missing.graph"], 1),
        (["analyze"], 1),
        (["inertia", "p3.graph", "--tol", "-1"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code
    assert capsys.readouterr().err
