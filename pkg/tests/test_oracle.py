import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aspsem import oracle
from aspsem.oracle import compare_model_sets, find_solver, parse_models, run_external
from aspsem.syntax import INF, Atom, Numeral, Symbol

p, q = Atom("p"), Atom("q")
SOLVER = find_solver()
needs_solver = pytest.mark.skipif(SOLVER is None, reason="no ASP solver available")


def fake(code: str) -> list:
    return [sys.executable, "-c", code]


CLINGO_LIKE = """clingo version 5.8.2
Reading from stdin
Solving...
Answer: 1

Answer: 2
p q(-1) r(a,#inf)
SATISFIABLE

Models       : 2
"""


def test_parse_models():
    models, diags = parse_models(CLINGO_LIKE)
    assert diags == []
    assert models == [
        frozenset(),
        frozenset({p, Atom("q", (Numeral(-1),)), Atom("r", (Symbol("a"), INF))}),
    ]


def test_parse_unsatisfiable():
    assert parse_models("Solving...\nUNSATISFIABLE\n") == ([], [])


def test_parse_unrecognised_output():
    models, diags = parse_models("something else entirely\n")
    assert models is None and diags


def test_diff_examples():
    assert compare_model_sets([{p}], [{p}]).equal
    diff = compare_model_sets([{p}], [])
    assert diff.left_only == (frozenset({p}),) and diff.right_only == ()
    assert diff.render() == "< p\n"


MODEL_LISTS = st.lists(st.frozensets(st.sampled_from([p, q, Atom("r")])), max_size=4)


@given(MODEL_LISTS, MODEL_LISTS)
def test_diff_order_insensitive_and_idempotent(a, b):
    d = compare_model_sets(a, b)
    assert d == compare_model_sets(list(reversed(a)), list(reversed(b)))
    assert d == compare_model_sets(a + a, b + b)
    assert d.equal == (set(a) == set(b))
    assert compare_model_sets(a, a).equal


def test_missing_binary_is_skipped():
    run = run_external("p.", ["/nonexistent/solver"])
    assert run.status == "skipped" and not run.ok and run.models is None


def test_timeout_status():
    run = run_external("p.", fake("import time; time.sleep(10)"), timeout=0.5)
    assert run.status == "timeout"


def test_error_exit_status():
    run = run_external("p.", fake("import sys; sys.exit(3)"))
    assert run.status == "error" and run.exit_code == 3


def test_unparsed_output_keeps_raw_text():
    run = run_external("p.", fake("print('hello')"))
    assert run.status == "unparsed" and run.models is None
    assert "hello" in run.stdout and run.diagnostics


def test_fake_solver_output_is_parsed():
    script = "import sys; sys.stdin.read(); print('Answer: 1'); print('p'); print('SATISFIABLE')"
    run = run_external("p.", fake(script))
    assert run.ok and run.models == [frozenset({p})]


def test_environment_variable(monkeypatch):
    monkeypatch.setenv(oracle.SOLVER_ENV, "/some/solver --flag")
    assert find_solver() == ["/some/solver", "--flag"]
    assert find_solver("other") == ["other"]


@needs_solver
def test_solver_examples():
    assert run_external("p :- not q.").models == [frozenset({p})]
    assert run_external("q(1..2).").models == [frozenset({Atom("q", (Numeral(1),)), Atom("q", (Numeral(2),))})]
    assert run_external(":- 1 < 2.").models == []
