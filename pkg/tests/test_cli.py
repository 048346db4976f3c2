import json
import subprocess
import sys

import pytest

from symweb import cli
from symweb.dsl import parse_and_elaborate
from symweb.qpoly import InexactDivisionError, LaurentHalf
from symweb.repbackend import evaluate


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_eval_circle(capsys):
    assert run(capsys, "eval", "cap(1) ; cup(1)") == (0, "-q - q^-1", "")


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "cap(2) ; cup(2)", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["kind"] == "scalar"
    assert LaurentHalf.from_json(data["terms"]) == LaurentHalf.parse("q^2 + 1 + q^-2")


CORPUS = [
    "s(1,1) ; m(1,1)",
    "[2] id(1) x id(1) + cup(1) ; cap(1)",
    "m(1,2) ; s(1,2)",
    "cup(2) ; cap(2)",
    "id(1) x cap(1) ; cup(1) x id(1)",
    "q^{1/2} id(1,1) + q^{-1/2} cup(1) ; cap(1)",
]


@pytest.mark.parametrize("src", CORPUS)
def test_eval_matches_backend(capsys, src):
    code, out, _ = run(capsys, "eval", src, "--json")
    data = json.loads(out)
    want = evaluate(parse_and_elaborate(src)[0]).to_json()
    assert code == 0 and data["matrix"] == want


def test_eval_parse_error(capsys):
    code, _, err = run(capsys, "eval", "cap(1) ; (cup(1)")
    assert code == 1 and "line 1, column 17" in err


def test_eval_mismatch_warns(capsys):
    code, out, err = run(capsys, "eval", "cap(1) ; cup(2)")
    assert code == 0 and out == "0" and "warning" in err


def test_jones_hopf(capsys):
    assert run(capsys, "jones", "--colors", "1,1", "--word", "s1 s1", "--mode", "paper")[:2] == (
        0, "1 + q^-2 + q^-4 + q^-6")


def test_jones_json(capsys):
    code, out, _ = run(capsys, "jones", "--colors", "1,1,1", "--word", "s1 S2 s1 S2", "--json")
    data = json.loads(out)
    assert data["schema"] == 1 and data["value"] == "-q^5 - q^-5" and data["mode"] == "paper"


@pytest.mark.parametrize("argv", [
    ["jones", "--colors", "1,1", "--word", "t1"],
    ["jones", "--colors", "1,2", "--word", "s1"],
    ["jones", "--colors", "1,x", "--word", "s1"],
    ["jones", "--colors", "1,2", "--word", "s1 s1", "--mode", "paper"],
    ["jones", "--colors", "1,1", "--word", "s1", "--mode", "wrong"],
    ["jw", "--k", "0"],
    ["check-relations", "--rule", "no_such_rule"],
    ["frobnicate"],
])
def test_input_errors_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_jw_verify(capsys):
    assert run(capsys, "jw", "--k", "4", "--verify")[:2] == (0, "idempotent: OK, cap-kill: OK, recursion: OK")


def test_jw_verify_failure_exit_2(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verify", lambda k: {"idempotent": True, "cap-kill": False, "recursion": True})
    code, out, _ = run(capsys, "jw", "--k", "3", "--verify")
    assert code == 2 and "cap-kill: FAIL" in out


def test_jw_matrix_json(capsys):
    code, out, _ = run(capsys, "jw", "--k", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["matrix"]["domain"] == [1, 1]


def test_check_relations(capsys):
    code, out, _ = run(capsys, "check-relations", "--max-thickness", "3", "--rule", "digon_removal")
    lines = out.splitlines()
    assert code == 0
    assert "digon_removal k=1 l=1 : OK" in lines
    assert lines[-1].endswith("OK")


def test_check_relations_json(capsys, monkeypatch):
    monkeypatch.setenv("SYMWEB_THREADS", "2")
    code, out, _ = run(capsys, "check-relations", "--max-thickness", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["failed"] == 0 and data["checked"] > 0


def test_inexact_division_exit_3(capsys, monkeypatch):
    def boom(*_):
        raise InexactDivisionError("forced")
    monkeypatch.setattr(cli, "evaluate", boom)
    assert run(capsys, "eval", "id(1)")[0] == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "symweb", "eval", "cap(1) ; cup(1)"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "-q - q^-1"
