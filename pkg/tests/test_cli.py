import json
import subprocess
import sys

import jsonschema
import pytest

from latin_terwilliger import corpus
from latin_terwilliger.cli import main
from latin_terwilliger.quasigroup import parse_latin_square
from latin_terwilliger.report import load_schema

SCHEMA = load_schema()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_pi_fig1(capsys):
    code, out, _ = run(capsys, "pi", "corpus:fig1", "--base", "1,1")
    assert code == 0 and out.strip() == "(2 3)"


def test_pi_from_file(tmp_path, capsys):
    f = tmp_path / "fig1.txt"
    f.write_text("1 2 3\n2 3 1\n3 1 2\n")
    code, out, _ = run(capsys, "pi", str(f), "--base", "1,1")
    assert code == 0 and out.strip() == "(2 3)"


def test_pi_from_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("1 2 3\n2 3 1\n3 1 2\n"))
    code, out, _ = run(capsys, "pi", "-", "--base", "1,1")
    assert out.strip() == "(2 3)"


def test_certify_exit_codes(capsys):
    code, out, _ = run(capsys, "certify", "corpus:fig2")
    assert code == 0 and out.strip() == "certified-right-bol"
    code, out, _ = run(capsys, "certify", "corpus:fig3")
    assert code == 1 and out.startswith("hypothesis-failed(NoRIP)")


def test_verify_fig3(capsys):
    code, out, _ = run(capsys, "verify", "corpus:fig3", "--base", "3,1")
    assert code == 0
    assert "predicted 98, oracle 98" in out and out.strip().endswith("match")


def test_verify_json(capsys):
    code, doc = run_json(capsys, "verify", "corpus:z5", "--base", "2,2", "--center")
    assert code == 0
    (rep,) = doc["oracle"]
    assert rep["oracle_dim"] == rep["predicted_dim"] and rep["match"]


def test_modules_text(capsys):
    code, out, _ = run(capsys, "modules", "corpus:fig2", "--base", "1,1")
    assert code == 0
    assert "eps = -1" in out and "balance 64" in out and "M5 + M6^2 + M1" in out


def test_modules_small_order(capsys):
    code, _, err = run(capsys, "modules", "corpus:z4", "--base", "1,1")
    assert code == 2 and "n >= 5" in err


def test_profile_tsv(capsys):
    code, out, _ = run(capsys, "profile", "corpus:fig2", "--tsv", "--jobs", "1")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 65
    assert lines[0].split("\t")[:3] == ["row", "col", "entry"]
    assert lines[1].split("\t") == ["1", "1", "1", "1 2^3", "1", "2", "98"]


def test_profile_text(capsys):
    code, out, _ = run(capsys, "profile", "corpus:fig3")
    assert code == 0 and "row-constant: False" in out


def test_transform_round_trip(tmp_path, capsys):
    src = corpus.load("fig2").square.to_text()
    a = tmp_path / "a.txt"
    a.write_text(src)
    _, once, _ = run(capsys, "transform", str(a), "--conjugacy", "cre")
    b = tmp_path / "b.txt"
    b.write_text(once)
    _, twice, _ = run(capsys, "transform", str(b), "--conjugacy", "cre")
    assert twice == src
    assert parse_latin_square(once) == corpus.square("fig2").transpose()


def test_transform_isotopy(tmp_path, capsys):
    iso = tmp_path / "iso.txt"
    iso.write_text("1 2 3\n1 2 3\n2 3 1\n")
    code, out, _ = run(capsys, "transform", "corpus:fig1", "--isotopy", str(iso))
    assert code == 0 and out == "2 3 1\n3 1 2\n1 2 3\n"


def test_transform_bad_isotopy(tmp_path, capsys):
    iso = tmp_path / "iso.txt"
    iso.write_text("1 2\n1 2\n")
    assert run(capsys, "transform", "corpus:fig1", "--isotopy", str(iso))[0] == 2
    assert run(capsys, "transform", "corpus:fig1", "--isotopy", str(tmp_path / "none"))[0] == 2
    assert run(capsys, "transform", "corpus:fig1", "--conjugacy", "rrc")[0] == 2


@pytest.mark.parametrize("text", ["1 2\n1 2\n", "1 2\n2\n", "0 1\n1 0\n", "a b\nc d\n"])
def test_malformed_input_exits_2(tmp_path, capsys, text):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    code, _, err = run(capsys, "validate", str(f))
    assert code == 2 and err.startswith("error:")


def test_usage_errors(capsys):
    assert run(capsys, "pi", "corpus:fig1", "--base", "x")[0] == 2
    assert run(capsys, "pi", "corpus:fig1", "--base", "4,1")[0] == 2
    assert run(capsys, "pi", "corpus:nope", "--base", "1,1")[0] == 2
    assert run(capsys, "pi", "/no/such/file", "--base", "1,1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "criterion-search", "--orders", "x")[0] == 2
    assert run(capsys, "criterion-search", "--orders", "1")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_corpus_listing(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0
    for name in corpus.names():
        assert name in out
    code, out, _ = run(capsys, "corpus", "fig2")
    assert parse_latin_square(out).product(2, 2) == 8


def test_corpus_metadata():
    assert corpus.load("fig3").boxed == {(1, 5), (2, 7), (3, 1), (4, 6), (5, 3), (6, 4), (7, 2)}
    L = corpus.square("z2^3")
    assert all(L.product(a, a) == 1 for a in L.symbols)
    with pytest.raises(KeyError):
        corpus.load("nope")


COMMANDS = [
    ("validate",),
    ("properties",),
    ("pi", "--base", "1,1"),
    ("certify",),
    ("transform", "--conjugacy", "erc"),
]


@pytest.mark.parametrize("name", corpus.names())
@pytest.mark.parametrize("cmd", COMMANDS, ids=lambda c: c[0])
def test_json_matches_schema(capsys, name, cmd):
    code, doc = run_json(capsys, cmd[0], f"corpus:{name}", *cmd[1:])
    assert code in (0, 1)
    assert doc["command"] == cmd[0]
    assert doc["input"]["order"] == corpus.square(name).order


@pytest.mark.parametrize("name", corpus.names())
def test_profile_and_modules_json(capsys, name):
    L = corpus.square(name)
    code, doc = run_json(capsys, "profile", f"corpus:{name}", "--jobs", "1")
    assert code == 0 and len(doc["base_records"]) == L.order ** 2
    if L.order >= 5:
        code, doc = run_json(capsys, "modules", f"corpus:{name}", "--base", "1,1")
        assert doc["base_records"][0]["balance"] == L.order ** 2


def test_corpus_and_search_json(capsys):
    run_json(capsys, "corpus")
    run_json(capsys, "corpus", "fig3")
    code, doc = run_json(capsys, "criterion-search", "--budget", "2", "--orders", "5", "--seed", "3")
    assert code == 0 and doc["seed"] == 3 and doc["criterion_search"]["all_agree"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "latin_terwilliger", "pi", "corpus:fig1", "--base", "1,1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "(2 3)"
