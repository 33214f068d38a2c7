import json
import subprocess
import sys

import pytest

from liezeta.cli import main
from liezeta.verify import HALL_NAMES_34


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--n", "3", "--c", "4")
    assert code == 0
    assert tuple(out.split()) == HALL_NAMES_34


def test_basis_json(capsys):
    code, out, _ = run(capsys, "basis", "--n", "2", "--c", "3", "--json")
    d = json.loads(out)
    assert d["ok"] and [b["name"] for b in d["report"]["basis"]] == ["X", "Y", "YX", "YXX", "YXY"]


def test_zeta(capsys):
    code, out, _ = run(capsys, "zeta")
    assert code == 0
    assert "1 + p^{285-102s} + 2p^{286-102s} + 2p^{572-204s}" in out
    assert "(1 - p^{285-102s})(1 - p^{573-204s})" in out
    assert "conjectural for p <= 3" in out


@pytest.mark.parametrize("which, text", [
    ("zeta", "no functional equation: ratio is not ±p^b t^c"),
    ("geom", "(-1)^1 p^0 t^1"),
    ("geom2", "(-1)^0 p^1 t^2"),
])
def test_funceq(capsys, which, text):
    code, out, _ = run(capsys, "funceq", "--input", which)
    assert code == 0
    assert text in out


def test_bch(capsys):
    code, out, _ = run(capsys, "bch", "--c", "4")
    assert code == 0 and "m(4) = 24" in out


@pytest.mark.parametrize("cmd", ["structure", "ideal", "lambda", "theta"])
def test_informational_commands(capsys, cmd):
    code, out, _ = run(capsys, cmd)
    assert code == 0 and out


def test_theta_oracle(capsys):
    code, out, _ = run(capsys, "theta-oracle", "--prime", "5", "--json")
    d = json.loads(out)
    assert code == 0 and all(r["match"] for r in d["report"])


def test_group_law_reports_seed(capsys):
    code, out, _ = run(capsys, "group-law", "--seed", "3")
    assert code == 0 and out.startswith("# seed 3")


def test_aut_classify(capsys):
    code, out, _ = run(capsys, "aut-classify", "--ff-order", "5", "--workers", "1", "--json")
    d = json.loads(out)
    assert code == 0 and d["report"]["realizable"] == 32


@pytest.mark.parametrize("args", [
    ["nonsense"], ["zeta", "--bogus"], ["theta-oracle", "--prime", "4"], ["group-law", "--prime", "3"],
    ["zeta", "--degree", "3"], ["aut-classify", "--ff-order", "25"], ["theta", "--level", "0"],
    ["funceq", "--input", "other"],
])
def test_usage_errors(capsys, args):
    assert main(args) == 2


def test_deterministic_output(capsys):
    a = run(capsys, "group-law", "--json")[1]
    b = run(capsys, "group-law", "--json")[1]
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "liezeta", "funceq", "--input", "geom"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "t^1" in r.stdout
