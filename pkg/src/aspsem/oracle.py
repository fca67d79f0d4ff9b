"""Cross-checking against an external ASP solver.

The solver is any command accepting a program on stdin and printing models
in the plain-text ``Answer: k`` convention (clingo does).  A missing solver
is a skip, never a failure.
"""

from __future__ import annotations

import importlib.util
import os
import shlex
import shutil
import subprocess
import sys
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParseError
from .infinitary import model_key, render_model, sort_models
from .syntax import Atom, is_precomputed, parse_rule

SOLVER_ENV = "ASPSEM_SOLVER"
_OK_EXIT = {0, 10, 20, 30}
_RESULTS = ("SATISFIABLE", "UNSATISFIABLE", "UNKNOWN", "OPTIMUM FOUND")


def find_solver(explicit: str | None = None) -> list[str] | None:
    """Command for the solver: explicit, then environment, then PATH, then the clingo module."""
    command = explicit or os.environ.get(SOLVER_ENV)
    if command:
        return shlex.split(command)
    found = shutil.which("clingo")
    if found:
        return [found]
    if importlib.util.find_spec("clingo") is not None:
        return [sys.executable, "-m", "clingo"]
    return None


@dataclass
class SolverRun:
    command: list
    status: str  # "ok" | "skipped" | "timeout" | "error" | "unparsed"
    exit_code: int | None = None
    stdout: str = ""
    stderr: str = ""
    models: list | None = None
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def parse_atom(text: str) -> Atom:
    rule = parse_rule(text + ".")
    if rule.kind != "basic" or rule.body:
        raise ParseError("not a ground atom", 1, 1)
    if not all(is_precomputed(t) for t in rule.head.args):
        raise ParseError("not a precomputed argument", 1, 1)
    return rule.head


def parse_models(output: str) -> tuple[list[frozenset] | None, list[str]]:
    """Models from ``Answer:`` blocks; ``None`` if the text is not recognised."""
    lines = output.splitlines()
    models: list[frozenset] = []
    diagnostics: list[str] = []
    saw_result = False
    k = 0
    while k < len(lines):
        line = lines[k].strip()
        if line.startswith("Answer:"):
            atoms_line = lines[k + 1].strip() if k + 1 < len(lines) else ""
            if atoms_line in _RESULTS or atoms_line.startswith("Answer:"):
                models.append(frozenset())
                k += 1
                continue
            model = set()
            for token in atoms_line.split():
                try:
                    model.add(parse_atom(token))
                except ParseError as err:
                    diagnostics.append(f"unrecognised atom {token!r}: {err}")
            models.append(frozenset(model))
            k += 2
            continue
        if line in _RESULTS:
            saw_result = True
            if line == "UNKNOWN":
                diagnostics.append("solver reported UNKNOWN")
        k += 1
    if not saw_result:
        diagnostics.append("no SATISFIABLE/UNSATISFIABLE line in solver output")
        return None, diagnostics
    return sort_models(models), diagnostics


def run_external(
    program_text: str,
    solver: str | Sequence[str] | None = None,
    timeout: float = 30.0,
    args: Sequence[str] = ("0",),
) -> SolverRun:
    """Run the solver in enumerate-all mode and parse its models."""
    if isinstance(solver, str) or solver is None:
        command = find_solver(solver)
    else:
        command = list(solver)
    if command is None:
        return SolverRun([], "skipped", diagnostics=["no solver configured"])
    command = [*command, *args]
    try:
        proc = subprocess.run(
            command, input=program_text, capture_output=True, text=True, timeout=timeout
        )
    except FileNotFoundError:
        return SolverRun(command, "skipped", diagnostics=[f"solver not found: {command[0]}"])
    except subprocess.TimeoutExpired as err:
        out = err.stdout.decode() if isinstance(err.stdout, bytes) else (err.stdout or "")
        return SolverRun(command, "timeout", stdout=out, diagnostics=[f"timed out after {timeout}s"])
    run = SolverRun(command, "ok", proc.returncode, proc.stdout, proc.stderr)
    if proc.returncode not in _OK_EXIT:
        run.status = "error"
        run.diagnostics.append(f"solver exited with status {proc.returncode}")
        return run
    models, diags = parse_models(proc.stdout)
    run.diagnostics.extend(diags)
    if models is None or any(d.startswith("unrecognised") for d in diags):
        run.status = "unparsed"
    else:
        run.models = models
    return run


@dataclass(frozen=True)
class ModelDiff:
    left_only: tuple
    right_only: tuple

    @property
    def equal(self) -> bool:
        return not self.left_only and not self.right_only

    def render(self) -> str:
        lines = [f"< {render_model(m)}" for m in self.left_only]
        lines += [f"> {render_model(m)}" for m in self.right_only]
        return "".join(line + "\n" for line in lines)


def compare_model_sets(a: Iterable[Iterable], b: Iterable[Iterable]) -> ModelDiff:
    left = {frozenset(m) for m in a}
    right = {frozenset(m) for m in b}
    return ModelDiff(
        tuple(sorted(left - right, key=model_key)),
        tuple(sorted(right - left, key=model_key)),
    )
