import json

from click.testing import CliRunner

from bioctonion.cli import main

DD = {"kind": "decomposable", "field": "Q", "mu1": ["-1", "-1", "-1"], "mu2": ["-1", "-1", "-1"]}
SS = {"kind": "decomposable", "field": "Q", "mu1": ["1", "1", "1"], "mu2": ["1", "1", "1"]}
SD = {"kind": "decomposable", "field": "Q", "mu1": ["1", "1", "1"], "mu2": ["-1", "-1", "-1"]}


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_algebra_invariants_division_division():
    r = run("algebra-invariants", "--in", json.dumps(DD))
    assert r.exit_code == 0, r.output
    out = json.loads(r.output)
    assert out["b6"]["bit"] == 1 and out["b3"]["bit"] == 0


def test_tkk_profile_split():
    desc = dict(SS, field="F5")
    r = run("tkk-profile", "--in", json.dumps(desc))
    assert r.exit_code == 0, r.output
    assert json.loads(r.output) == {"dims": [14, 64, 92, 64, 14], "total": 248, "type": "E8"}


def test_form_en_zero_class():
    r = run("form-en", "--n", 3, "--field", "Q", "--in",
            json.dumps({"entries": ["1", "-2", "-3", "6", "-5", "10", "15", "-30"]}))
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["bit"] == 0


def test_form_witt_and_batch():
    r = run("form-witt", "--field", "Q", "--in",
            json.dumps([{"entries": ["1", "-1", "5"]}, {"entries": ["1", "1"]}]))
    assert r.exit_code == 0, r.output
    out = json.loads(r.output)
    assert out[0] == {"kernel": ["5"], "hyperbolic": 1}
    assert out[1]["hyperbolic"] == 0


def test_algebra_isotopic():
    r = run("algebra-isotopic", "--in", json.dumps({"a": SS, "b": SD}))
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["verdict"] == "NotIsotopic"


def test_text_output_and_out_file(tmp_path):
    path = tmp_path / "r.txt"
    r = run("form-witt", "--field", "F5", "--format", "text", "--out", path,
            "--in", json.dumps({"entries": ["1", "1", "1", "1"]}))
    assert r.exit_code == 0
    assert "hyperbolic: 2" in path.read_text()


def test_input_file(tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(SD))
    r = run("algebra-division", "--in", path)
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["division"] is False


def test_invalid_input_exit_code():
    assert run("form-witt", "--in", "{not json").exit_code == 1
    assert run("form-witt", "--in", json.dumps({"entries": ["1"]})).exit_code == 1
    assert run("form-en", "--field", "Q", "--in", json.dumps({"entries": ["1", "-1"]})).exit_code == 1
    assert run("algebra-build", "--in", json.dumps({"kind": "nope"})).exit_code == 1


def test_selftest_is_deterministic():
    args = ("selftest", "--only", "1,7", "--trials", 2, "--seed", 3, "--format", "json")
    a, b = run(*args), run(*args)
    assert a.exit_code == 0, a.output
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["failed"] == 0
