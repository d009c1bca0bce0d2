"""CLI subcommands end to end: outputs, exit codes and the verify round trip."""

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from effective_levi.cli import COMMANDS, main
from effective_levi.fixtures import fixture_names
from effective_levi.serialize import SCHEMA

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def run(tmp_path):
    counter = iter(range(10**6))

    def _run(cmd, doc=None, *extra, path=None):
        if path is None and doc is not None:
            path = tmp_path / f"in{next(counter)}.json"
            path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        argv = [cmd] + ([str(path)] if path is not None else []) + list(extra)
        buf = io.StringIO()
        code = main(argv, out=buf)
        text = buf.getvalue()
        return code, text

    return _run


@pytest.fixture
def verify(tmp_path):
    def _verify(text):
        p = tmp_path / "witness.json"
        p.write_text(text)
        buf = io.StringIO()
        code = main(["verify", str(p)], out=buf)
        return code, json.loads(buf.getvalue())

    return _verify


def check_ok(code, text, kind, verify):
    assert code == 0, text
    doc = json.loads(text)
    assert doc["schema"] == SCHEMA and doc["kind"] == kind
    vcode, vdoc = verify(text)
    assert vcode == 0 and vdoc["ok"], vdoc
    return doc


def test_every_command_is_wired():
    assert set(COMMANDS) == {
        "radical", "levi", "standardize", "height", "height-adjoint", "height-subspace",
        "reduce", "inj-radius", "siegel-kernel", "siegel-solve", "small-basis",
        "unipotent-reduce", "bench-exponents", "verify",
    }


@pytest.mark.parametrize("name", fixture_names())
def test_radical_and_levi_on_fixture_files(name, run, verify):
    path = FIXTURE_DIR / f"{name}.json"
    fix = json.loads(path.read_text())
    doc = check_ok(*run("radical", path=path), "radical", verify=verify)
    assert len(doc["r"]["basis"]) == fix["expected"]["dim_r"]
    doc = check_ok(*run("levi", path=path), "levi-decomposition", verify=verify)
    assert len(doc["h"]["basis"]) == fix["expected"]["dim_h"]
    assert len(doc["r"]["basis"]) == fix["expected"]["dim_r"]


def test_standardize(run, verify):
    doc = check_ok(*run("standardize", path=FIXTURE_DIR / "sl2_semidirect.json"), "flag-standardization", verify)
    assert doc["delta"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    code, text = run("standardize", path=FIXTURE_DIR / "borel_sl3.json")
    assert code == 2 and json.loads(text)["error"] == "NotNilpotentError"


def test_height_commands(run, verify):
    doc = check_ok(*run("height", [[1, 0], [0, 1]]), "height", verify)
    assert doc["ht"] == "1"
    s2 = {"places": ["inf", 2], "components": [[["2", "0"], ["0", "1/2"]]] * 2}
    assert check_ok(*run("height", s2), "height", verify)["ht"] == "1"
    # the same matrix at the real place only
    assert check_ok(*run("height", [["2", "0"], ["0", "1/2"]]), "height", verify)["ht"] == "2"
    assert check_ok(*run("height", [["2", "0"], ["0", "1/2"]], "--S", "inf,2"), "height", verify)["ht"] == "1"
    doc = check_ok(*run("height-adjoint", [["2", "0"], ["0", "1/2"]]), "height-adjoint", verify)
    assert doc["ht"] == "4"
    sub = {"N": 3, "vectors": [[[0, 1, 0], [0, 0, 0], [0, 0, 0]]]}
    assert check_ok(*run("height-subspace", sub), "subspace-height", verify)["ht"] == "1"


def test_reduce_and_injectivity(run, verify):
    doc = check_ok(*run("reduce", [["4", "0"], ["0", "1/4"]]), "siegel-reduction", verify)
    assert doc["gamma"] == [[0, -1], [1, 0]]
    assert doc["ht"] == "4"
    doc = check_ok(*run("inj-radius", [["4", "0"], ["0", "1/4"]], "--eta0", "1/8"), "injectivity-radius", verify)
    assert doc["eta0"] == "1/8"
    code, text = run("reduce", [["2", "0"], ["0", "1"]])
    assert code == 2


def test_siegel_commands(run, verify):
    doc = check_ok(*run("siegel-kernel", {"A": [[1, 1, 1]]}), "siegel-kernel", verify)
    assert len(doc["basis"]) == 2
    check_ok(*run("siegel-solve", {"A": [[2, 3]], "b": [1]}), "siegel-solution", verify)
    code, text = run("siegel-solve", {"A": [[1, 1], [1, 1]], "b": [1, 2]})
    assert code == 3
    doc = json.loads(text)
    assert doc["kind"] == "infeasible"
    vcode, _ = verify(text)
    assert vcode == 0
    check_ok(*run("small-basis", {"u": [[1, 1], [0, 1]]}), "small-basis", verify)


def test_unipotent_reduce(run, verify):
    inp = {"h": [["1", "15/2"], ["0", "1"]], "r": {"N": 2, "basis": [[[0, 1], [0, 0]]]}}
    doc = check_ok(*run("unipotent-reduce", inp), "unipotent-reduction", verify)
    assert doc["gamma"] == [[1, -8], [0, 1]]


def test_bench_json_and_csv(run, verify):
    args = ["--seeds", "sl2_semidirect", "--grid", "10,100", "--samples", "3", "--seed", "5"]
    code, text = run("bench-exponents", None, *args)
    doc = check_ok(code, text, "bench-report", verify)
    assert len(doc["rows"]) == 6
    code, csv_text = run("bench-exponents", None, *args, "--format", "csv")
    assert code == 0
    lines = csv_text.splitlines()
    assert lines[0].startswith("# schema=") and lines[1].startswith("# rng_seed=5")
    assert len(lines) == 2 + 1 + 6
    # reruns are byte-identical
    assert run("bench-exponents", None, *args)[1] == text


def test_outputs_are_deterministic(run):
    path = FIXTURE_DIR / "sl2_heisenberg.json"
    assert run("levi", path=path) == run("levi", path=path)


def test_tampered_witnesses_fail_verification(run, verify):
    code, text = run("height", [["4", "0"], ["0", "1/4"]])
    doc = json.loads(text)
    doc["ht"] = "5"
    vcode, vdoc = verify(json.dumps(doc))
    assert vcode == 2 and not vdoc["ok"] and vdoc["failures"]
    code, text = run("levi", path=FIXTURE_DIR / "sl2_semidirect.json")
    doc = json.loads(text)
    doc["h"]["basis"] = doc["h"]["basis"][:-1]
    assert verify(json.dumps(doc))[0] == 2
    doc = json.loads(text)
    doc["schema"] = "something-else/v0"
    assert verify(json.dumps(doc))[0] == 2


def test_error_exit_codes(run, tmp_path):
    assert run("height", "{not json")[0] == 2
    assert run("height", {"places": ["inf", 2], "components": [["2", "0"], ["0", "1/2"]]})[0] == 2
    assert run("radical", None, path=tmp_path / "missing.json")[0] == 2
    assert run("height", [[1, 0], [0, 1]], "--budget", "0")[0] == 2
    code, text = run("height", [[1, 0], [0, 1]], "--format", "csv")
    assert code == 2


def test_budget_exhaustion_exits_4(run):
    code, text = run("height", [["4", "0"], ["0", "1/4"]], "--budget", "1")
    assert code == 4, text
    assert json.loads(text)["error"] == "resource-limit"


def test_module_entry_point(tmp_path):
    p = tmp_path / "g.json"
    p.write_text("[[1,0],[0,1]]")
    res = subprocess.run([sys.executable, "-m", "effective_levi", "height", str(p)],
                         capture_output=True, text=True, timeout=60)
    assert res.returncode == 0
    assert json.loads(res.stdout)["ht"] == "1"
