import io
import json
import shutil

import pandas as pd
import pytest

from src.cli import build_parser, run
from src.errors import UsageError
from src.settings import VERTEX_CAP_ENV

from conftest import CORPUS_DIR

P2 = str(CORPUS_DIR / "p2.txt")
P3 = str(CORPUS_DIR / "p3.txt")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(VERTEX_CAP_ENV, raising=False)


@pytest.fixture
def cli(no_config):
    """Run the command line with built-in defaults; returns (exit code, stdout)."""
    def invoke(*argv):
        out = io.StringIO()
        code = run(["--config", no_config, *argv], stdout=out)
        return code, out.getvalue()
    return invoke


@pytest.fixture
def small_corpus(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for name in ("p2.txt", "p3.txt"):
        shutil.copy(CORPUS_DIR / name, corpus / name)
    return corpus


def test_parser_raises_instead_of_exiting():
    with pytest.raises(UsageError):
        build_parser().parse_args([])
    with pytest.raises(UsageError):
        build_parser().parse_args(["graph", "--tree", P3, "-n", "2", "--format", "png"])


def test_graph_json(cli):
    code, out = cli("graph", "--tree", P2, "-n", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert (payload["k"], payload["n"]) == (2, 3)
    assert len(payload["vertices"]) == 8
    assert len(payload["edges"]) == 8
    assert payload["generators"] == [[1, 1, 2]]


def test_graph_dot_to_file(cli, tmp_path):
    target = tmp_path / "g.dot"
    code, out = cli("graph", "--tree", P3, "-n", "2", "-o", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("graph schreier_n2 {")


def test_automaton(cli):
    code, out = cli("automaton", "--tree", P3)
    assert code == 0
    assert out.startswith("digraph automaton {")


def test_indices(cli):
    code, out = cli("indices", "--tree", P3, "-n", "1")
    assert code == 0
    report = json.loads(out)
    assert report["wiener"]["agree"] is True
    assert report["spanning_trees"]["published"] is None


def test_indices_formula_only(cli):
    code, out = cli("indices", "--tree", P3, "-n", "2", "--mode", "formula", "--variant", "published")
    assert code == 0
    report = json.loads(out)
    assert report["spanning_trees"] == {"formula": 16}


def test_tutte_eval(cli):
    code, out = cli("tutte", "--tree", P3, "-n", "2", "--eval", "1", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == 64
    assert payload["tutte"]["polynomial"] == "y^6*(y+x)^2*(y+x+x^2+x^3)^2"


def test_tutte_eval_rational(cli):
    code, out = cli("tutte", "--tree", P3, "-n", "2", "--eval", "1/2", "3")
    assert code == 0
    assert json.loads(out)["value"].endswith("/256")


def test_tutte_published(cli):
    code, out = cli("tutte", "--tree", P3, "-n", "2", "--variant", "published", "--eval", "2", "1")
    assert code == 0
    assert json.loads(out)["value"] == 225


def test_verify(cli, small_corpus, tmp_path):
    ledger = tmp_path / "ledger.csv"
    code, out = cli("verify", "--corpus", str(small_corpus), "--max-vertices", "9",
                    "--no-progress", "--ledger", str(ledger))
    assert code == 0
    assert "checks:" in out
    frame = pd.read_csv(ledger)
    assert set(frame["tree"]) >= {"p2", "p3"}
    assert "fail" not in set(frame["status"])


def test_verify_mismatch_exit_code(cli, small_corpus, monkeypatch):
    monkeypatch.setattr("src.pipeline.wiener_formula", lambda k, n, w_g: -1)
    code, _ = cli("verify", "--corpus", str(small_corpus), "--max-vertices", "4", "--no-progress")
    assert code == 4


@pytest.mark.parametrize("argv, expected", [
    ((), 1),
    (("graph", "--tree", P3, "-n", "0"), 1),
    (("graph", "--tree", P3), 1),
    (("tutte", "--tree", P3, "-n", "2", "--eval", "abc", "1"), 1),
    (("--vertex-cap", "0", "graph", "--tree", P3, "-n", "1"), 1),
    (("verify", "--max-vertices", "0"), 1),
    (("graph", "--tree", "does/not/exist.txt", "-n", "1"), 2),
    (("verify", "--corpus", "does/not/exist"), 2),
    (("--vertex-cap", "10", "graph", "--tree", P3, "-n", "3"), 3),
])
def test_exit_codes(cli, argv, expected):
    code, _ = cli(*argv)
    assert code == expected


def test_invalid_tree_exit_code(cli, tmp_path):
    bad = tmp_path / "cycle.txt"
    bad.write_text("1 2\n2 3\n3 1\n")
    assert cli("indices", "--tree", str(bad), "-n", "1")[0] == 2


def test_environment_vertex_cap(cli, monkeypatch):
    monkeypatch.setenv(VERTEX_CAP_ENV, "8")
    assert cli("graph", "--tree", P3, "-n", "2")[0] == 3
    assert cli("--vertex-cap", "9", "graph", "--tree", P3, "-n", "2")[0] == 0


def test_malformed_config_exit_code(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("limits: [unclosed\n")
    out = io.StringIO()
    assert run(["--config", str(config), "graph", "--tree", P3, "-n", "1"], stdout=out) == 2
    assert out.getvalue() == ""
