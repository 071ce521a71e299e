"""Tests for the command-line interface, the module-file format and the
byte-stable golden reports."""

import io
import json
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from bannai_ito.bimodule import BIModule, TwistSign, even_module, example_even, \
    example_odd, odd_module, twist
from bannai_ito.cli import CliError, main, parse_module, serialize_module
from bannai_ito.exactlinalg import Matrix

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- serialization ------------------------------------------------------------

def test_round_trip_built_modules():
    mods = [example_even(), example_odd(), even_module(5, F(1, 2), F(-3, 2), 2),
            twist(odd_module(2, 1, 0, F(1, 2)), TwistSign(-1, 1))]
    for mod in mods:
        back, meta = parse_module(serialize_module(mod, {"k": "v"}))
        assert back.X == mod.X and back.Y == mod.Y
        assert (back.kappa, back.lam, back.mu) == (mod.kappa, mod.lam, mod.mu)
        assert meta == {"k": "v"}


def test_round_trip_without_optional_scalars():
    mod = BIModule(Matrix([[1]]), Matrix([[2]]), kappa=F(3))
    text = serialize_module(mod)
    assert '"lambda"' not in text and '"mu"' not in text
    back, _ = parse_module(text)
    assert back.lam is None and back.mu is None
    assert back.kappa == 3


def test_module_file_key_order():
    doc = json.loads(serialize_module(example_even(), {"family": "even"}))
    assert list(doc) == ["dim", "X", "Y", "kappa", "lambda", "mu", "meta"]


def test_parse_rejects_non_canonical_rational():
    text = serialize_module(example_even()).replace('"4"', '"8/2"', 1)
    with pytest.raises(CliError) as exc:
        parse_module(text)
    assert exc.value.code == 2


def test_parse_rejects_malformed_documents():
    for bad in ("not json", '{"dim": 1}', '[]',
                '{"dim": 2, "X": [["0"]], "Y": [["0"]], "kappa": "0"}',
                '{"dim": 1, "X": [["0"]], "Y": [["0"]], "kappa": "0", "bogus": 1}'):
        with pytest.raises(CliError) as exc:
            parse_module(bad)
        assert exc.value.code == 2


# --- build and fixture ----------------------------------------------------------

def test_build_matches_fixture(capsys, tmp_path):
    out = tmp_path / "built.json"
    code, _, err = run_cli(capsys, "build", "--family", "even", "--d", "3",
                           "--a", "1", "--b", "0", "--c", "1", "--out", str(out))
    assert code == 0
    assert "kappa=4 lambda=4 mu=2" in err
    code, fixture_text, _ = run_cli(capsys, "fixture", "exampleE")
    assert out.read_text() == fixture_text


def test_build_one_dimensional(capsys):
    code, out, _ = run_cli(capsys, "build", "--family", "odd", "--d", "0",
                           "--a", "2", "--b", "3", "--c", "5", "--quiet")
    assert code == 0
    doc = json.loads(out)
    assert doc["X"] == [["2"]] and doc["Y"] == [["3"]]
    assert doc["kappa"] == "7"  # 2*2*3 - 5*1


def test_build_twist(capsys):
    code, out, _ = run_cli(capsys, "build", "--family", "even", "--d", "1",
                           "--a", "1", "--b", "1", "--c", "1",
                           "--twist=-1,1", "--quiet")
    assert code == 0
    mod, meta = parse_module(out)
    expected = twist(even_module(1, 1, 1, 1), TwistSign(-1, 1))
    assert mod.X == expected.X and mod.Y == expected.Y and mod.kappa == expected.kappa
    assert meta["twist"] == "-1,1"


def test_build_rejects_bad_parity(capsys):
    code, _, err = run_cli(capsys, "build", "--family", "even", "--d", "2",
                           "--a", "1", "--b", "0", "--c", "1")
    assert code == 2
    assert "odd d" in err


def test_build_rejects_bad_rational(capsys):
    code, _, _ = run_cli(capsys, "build", "--family", "even", "--d", "1",
                         "--a", "one", "--b", "0", "--c", "0")
    assert code == 2


def test_fixture_outputs_are_pinned(capsys):
    for name, golden in (("exampleE", "module_exampleE.json"),
                         ("exampleO", "module_exampleO.json")):
        code, out, _ = run_cli(capsys, "fixture", name)
        assert code == 0
        assert out == (GOLDEN / golden).read_text()


# --- check ------------------------------------------------------------------------

def test_check_passes_on_fixture(capsys, tmp_path):
    path = tmp_path / "e.json"
    path.write_text(serialize_module(example_even()))
    code, out, _ = run_cli(capsys, "check", str(path), "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True and doc["exit"] == 0
    scalars = {r["relation"]: r["scalar"] for r in doc["relations"]}
    assert scalars == {"kappa": "4", "lambda": "4", "mu": "2"}


def test_check_names_failing_relation(capsys, tmp_path):
    doc = json.loads(serialize_module(example_even()))
    doc["Y"][0][1] = "2"  # perturb one entry
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "check", str(path), "--no-timing")
    assert code == 1
    rep = json.loads(out)
    assert rep["passed"] is False
    failed = [r["relation"] for r in rep["relations"] if not r["passed"]]
    assert failed  # the failing relation is named


def test_check_one_dimensional(capsys, tmp_path):
    path = tmp_path / "o0.json"
    path.write_text(serialize_module(odd_module(0, 2, 3, 5)))
    code, out, _ = run_cli(capsys, "check", str(path), "--no-timing")
    assert code == 0 and json.loads(out)["passed"] is True


def test_check_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(serialize_module(example_odd())))
    code, out, _ = run_cli(capsys, "check", "--no-timing")
    assert code == 0 and json.loads(out)["passed"] is True


# --- classify / identify -------------------------------------------------------------

def test_classify_fixture(capsys, tmp_path):
    path = tmp_path / "e.json"
    code, _, _ = run_cli(capsys, "build", "--family", "even", "--d", "3",
                         "--a", "1", "--b", "0", "--c", "1",
                         "--quiet", "--out", str(path))
    assert code == 0
    code, out, _ = run_cli(capsys, "classify", str(path), "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["oracle"]["status"] == "irreducible"
    assert doc["criterion"]["status"] == "irreducible"
    assert doc["methods_agree"] is True
    assert doc["class"] == {"family": "even", "d": 3, "twist": "1,1",
                            "params": ["1", "0", "1"]}


def test_classify_reducible_embeds_witness(capsys, tmp_path):
    path = tmp_path / "r.json"
    run_cli(capsys, "build", "--family", "even", "--d", "1", "--a", "0",
            "--b", "0", "--c", "0", "--quiet", "--out", str(path))
    code, out, _ = run_cli(capsys, "classify", str(path), "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["oracle"]["status"] == "reducible"
    assert doc["oracle"]["witness"] == [["0", "1"]]
    assert "class" not in doc


def test_classify_indeterminate_exit_code(capsys, tmp_path):
    # two copies of the trivial module: relations hold, but no nullity-1
    # element exists within the word budget
    path = tmp_path / "z.json"
    mod = BIModule(Matrix.zero(2, 2), Matrix.zero(2, 2), kappa=F(0))
    path.write_text(serialize_module(mod))
    code, out, _ = run_cli(capsys, "classify", str(path), "--no-timing")
    assert code == 3
    assert json.loads(out)["oracle"]["status"] == "indeterminate"


def test_classify_gates_on_relations(capsys, tmp_path):
    doc = json.loads(serialize_module(example_even()))
    doc["Y"][0][1] = "2"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "classify", str(path), "--no-timing")
    assert code == 1
    assert "error" in json.loads(out)


def test_identify_example_odd(capsys, tmp_path):
    path = tmp_path / "o.json"
    run_cli(capsys, "fixture", "exampleO", "--out", str(path))
    code, out, _ = run_cli(capsys, "identify", str(path), "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["class"] == {"family": "odd", "d": 4, "twist": None,
                            "params": ["3/2", "1/2", "-1/2"]}


def test_identify_rejects_reducible(capsys, tmp_path):
    path = tmp_path / "r.json"
    run_cli(capsys, "build", "--family", "even", "--d", "1", "--a", "0",
            "--b", "0", "--c", "0", "--quiet", "--out", str(path))
    code, out, _ = run_cli(capsys, "identify", str(path), "--no-timing")
    assert code == 1
    assert "error" in json.loads(out)


# --- iso ---------------------------------------------------------------------------

def test_iso_flip_pair(capsys, tmp_path):
    p1, p2 = tmp_path / "p.json", tmp_path / "m.json"
    run_cli(capsys, "build", "--family", "even", "--d", "3", "--a", "1",
            "--b", "0", "--c", "1", "--quiet", "--out", str(p1))
    run_cli(capsys, "build", "--family", "even", "--d", "3", "--a=-1",
            "--b", "0", "--c", "1", "--quiet", "--out", str(p2))
    code, out, _ = run_cli(capsys, "iso", str(p1), str(p2), "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["isomorphic"] is True
    t = Matrix([[F(e) for e in row] for row in doc["intertwiner"]])
    v, w = even_module(3, 1, 0, 1), even_module(3, -1, 0, 1)
    assert t * v.X == w.X * t and t * v.Y == w.Y * t
    assert t.rank() == 4


def test_iso_distinct_classes(capsys, tmp_path):
    p1, p2 = tmp_path / "p.json", tmp_path / "q.json"
    run_cli(capsys, "build", "--family", "even", "--d", "3", "--a", "1",
            "--b", "0", "--c", "1", "--quiet", "--out", str(p1))
    run_cli(capsys, "build", "--family", "even", "--d", "3", "--a", "2",
            "--b", "0", "--c", "1", "--quiet", "--out", str(p2))
    code, out, _ = run_cli(capsys, "iso", str(p1), str(p2), "--no-timing")
    assert code == 1
    assert json.loads(out)["isomorphic"] is False


def test_iso_indeterminate(capsys, tmp_path):
    # both reducible with a nonzero intertwiner space lacking invertibles
    v = BIModule(Matrix([[0, 1], [0, 0]]), Matrix.zero(2, 2),
                 kappa=F(0), lam=F(0), mu=F(0))
    w = BIModule(Matrix.zero(2, 2), Matrix.zero(2, 2),
                 kappa=F(0), lam=F(0), mu=F(0))
    p1, p2 = tmp_path / "v.json", tmp_path / "w.json"
    p1.write_text(serialize_module(v))
    p2.write_text(serialize_module(w))
    code, out, _ = run_cli(capsys, "iso", str(p1), str(p2), "--no-timing")
    assert code == 3
    assert json.loads(out)["isomorphic"] == "indeterminate"


# --- minpoly and scan -----------------------------------------------------------------

def test_minpoly_all_generators(capsys, tmp_path):
    path = tmp_path / "o.json"
    run_cli(capsys, "fixture", "exampleO", "--out", str(path))
    code, out, _ = run_cli(capsys, "minpoly", str(path), "--no-timing")
    assert code == 0
    doc = json.loads(out)
    by_gen = {r["generator"]: r for r in doc["results"]}
    assert set(by_gen) == {"X", "Y", "Z"}
    assert all(not r["squarefree"] for r in by_gen.values())
    assert all(not r["diagonalizable"] for r in by_gen.values())
    assert by_gen["Z"]["factored"] == "(x - 3/2)^2(x + 1/2)^2(x + 5/2)"


def test_scan_grid_agrees(capsys):
    code, out, _ = run_cli(capsys, "scan", "--family", "even", "--d", "1",
                           "--values=-1,0,1", "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["grid_points"] == 27
    assert doc["disagreements"] == [] and doc["indeterminate"] == []


def test_scan_odd_family(capsys):
    code, out, _ = run_cli(capsys, "scan", "--family", "odd", "--d", "2",
                           "--values=0,-1/2,1", "--no-timing")
    assert code == 0
    assert json.loads(out)["disagreements"] == []


# --- golden pipe -----------------------------------------------------------------------

def test_golden_minpoly_pipe_is_byte_exact():
    fixture = subprocess.run([sys.executable, "-m", "bannai_ito", "fixture", "exampleE"],
                             capture_output=True, check=True)
    report = subprocess.run([sys.executable, "-m", "bannai_ito", "minpoly",
                             "--gen", "Z", "--no-timing"],
                            input=fixture.stdout, capture_output=True, check=True)
    assert report.stdout == (GOLDEN / "minpoly_z_exampleE.json").read_bytes()


def test_reports_are_deterministic(capsys, tmp_path):
    path = tmp_path / "e.json"
    run_cli(capsys, "fixture", "exampleE", "--out", str(path))
    runs = [run_cli(capsys, "classify", str(path), "--no-timing")[1] for _ in range(2)]
    assert runs[0] == runs[1]
