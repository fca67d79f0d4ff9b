import json
import subprocess
import sys
from pathlib import Path

import pytest

from aspsem import corpus, oracle, taustar
from aspsem.cli import main

GOLDEN = Path(__file__).parent / "golden"
COVER_CONSTRAINT = ":- not asg(V,C) : col(C); vtx(V).\n"
COVER_CONSTRAINT_TRANSLATION = (
    "∀V (¬(∀C (∃Z (Z = C ∧ col(Z)) → ∃Z Z1 (Z = V ∧ Z1 = C ∧ ¬asg(Z, Z1))) ∧ ∃Z (Z = V ∧ vtx(Z)))).\n"
)


@pytest.fixture
def lp(tmp_path):
    def write(text, name="prog.lp"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_round_trip(capsys, lp):
    code, out, _ = call(capsys, "parse", lp(COVER_CONSTRAINT))
    assert code == 0 and out == COVER_CONSTRAINT


def test_parse_json(capsys, lp):
    code, out, _ = call(capsys, "parse", lp("p(1..2)."), "--format", "json")
    assert code == 0 and isinstance(json.loads(out), dict)


def test_syntax_error_reports_location(capsys, lp):
    path = lp("p :- q\n")
    code, out, err = call(capsys, "parse", path)
    assert code == 2 and out == ""
    assert err.startswith(f"{path}:2:1:")


def test_missing_file(capsys, tmp_path):
    code, _, err = call(capsys, "parse", str(tmp_path / "absent.lp"))
    assert code == 1 and "cannot read" in err


def test_empty_program(capsys, lp):
    assert call(capsys, "solve", lp(""))[:2] == (0, "\n")
    assert call(capsys, "verify", lp(""))[0] == 0


def test_translate_cover_constraint(capsys, lp):
    code, out, _ = call(capsys, "translate", lp(COVER_CONSTRAINT))
    assert code == 0 and out == COVER_CONSTRAINT_TRANSLATION


def test_translate_with_sm(capsys, lp):
    code, out, _ = call(capsys, "translate", "--sm", lp(COVER_CONSTRAINT))
    lines = out.splitlines()
    assert code == 0 and lines[0] + "\n" == COVER_CONSTRAINT_TRANSLATION
    assert lines[1] == (GOLDEN / "cover_constraint.sm.txt").read_text(encoding="utf-8").strip()


def test_translate_golden_via_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(corpus.load("coloring").text))
    code, out, _ = call(capsys, "translate")
    assert code == 0 and out == (GOLDEN / "coloring.taustar.txt").read_text(encoding="utf-8")


def test_ground_and_tau(capsys, lp):
    path = lp("p :- not q.")
    code, out, err = call(capsys, "ground", path)
    assert code == 0 and "int bound" in err and "p" in out
    code, out, _ = call(capsys, "ground", "--raw", "--format", "json", path)
    assert code == 0 and json.loads(out)["schema"] == "aspsem.infinitary/1"
    code, out, _ = call(capsys, "tau", path, "--int-bound", "0")
    assert code == 0 and "(¬q → p)" in out


@pytest.mark.parametrize("route", ["smdef", "gringo", "both"])
def test_solve_text(capsys, lp, route):
    assert call(capsys, "solve", "--route", route, lp("p :- not q."))[:2] == (0, "p\n")
    assert call(capsys, "solve", "--route", route, lp("{p}."))[:2] == (0, "\np\n")
    assert call(capsys, "solve", "--route", route, lp(":- 1 < 2."))[:2] == (0, "UNSATISFIABLE\n")


def test_solve_json(capsys, lp):
    code, out, _ = call(capsys, "solve", lp("q(1..2)."), "--format", "json", "--int-bound", "3")
    data = json.loads(out)
    assert code == 0
    assert data == {
        "schema": "aspsem.answer-sets/1", "int_bound": 3, "route": "both",
        "answer_sets": [["q(1)", "q(2)"]],
    }


def test_verify_json(capsys, lp):
    code, out, _ = call(capsys, "verify", lp("p :- not not p."), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "equivalent"
    assert data["schema"] == "aspsem.equivalence-report/1"


def test_verify_refusal_exit_code(capsys):
    path = str(Path(corpus.__file__).parent / "coloring.lp")
    code, out, _ = call(capsys, "verify", path, "--base-limit", "4")
    assert code == 3 and "verdict: refused" in out


def test_limit_refusal_exit_code(capsys, lp):
    code, _, err = call(capsys, "solve", lp("p(1..50)."), "--interval-cap", "10", "--int-bound", "50")
    assert code == 3 and err.strip().splitlines()[-1].startswith("refused:")


def test_verify_detects_broken_translation(capsys, lp, monkeypatch):
    monkeypatch.setattr(taustar, "choice_guard", lambda head: [])
    code, out, _ = call(capsys, "verify", lp("{p}."))
    assert code == 4 and "verdict: counterexample" in out


def test_bad_configuration(capsys, lp):
    code, _, err = call(capsys, "solve", lp("p."), "--int-bound", "-1")
    assert code == 1 and "bad configuration" in err


@pytest.mark.parametrize("command", ["parse", "translate", "ground", "tau", "solve", "verify"])
def test_output_is_deterministic(command, lp):
    path = lp(corpus.load("two_conditions").text)
    runs = [
        subprocess.run(
            [sys.executable, "-m", "aspsem.cli", command, path, "--format", "json", "--int-bound", "2"],
            capture_output=True, check=False,
        )
        for _ in range(2)
    ]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout


def test_cross_check(capsys, lp):
    code, out, _ = call(capsys, "cross-check", lp("p :- not q. r(1..2)."))
    assert code == 0
    if oracle.find_solver() is None:
        assert out.startswith("skipped:")
    else:
        assert out == "agree: 1 answer sets\n"


def test_cross_check_without_solver(capsys, lp):
    code, out, _ = call(capsys, "cross-check", lp("p."), "--solver", "/nonexistent/solver")
    assert code == 0 and out.startswith("skipped:")


def test_cross_check_disagreement(capsys, lp):
    fake = f"{sys.executable} -c \"import sys; sys.stdin.read(); print('UNSATISFIABLE')\""
    code, _, err = call(capsys, "cross-check", lp("p."), "--solver", fake)
    assert code == 5 and "disagrees" in err
