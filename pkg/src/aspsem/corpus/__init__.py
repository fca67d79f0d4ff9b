"""Bundled test programs.

Each ``.lp`` file starts with comment headers::

    % covers: choice, constraint, interval
    % crosscheck: yes

``covers`` lists the features the program exercises.  ``crosscheck`` marks
programs whose numerals stay small enough that a bounded universe and an
unbounded external solver must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..syntax import Program, parse_program


@dataclass(frozen=True)
class CorpusProgram:
    name: str
    text: str
    covers: frozenset
    crosscheck: bool
    large: bool

    @property
    def program(self) -> Program:
        return parse_program(self.text)


def _headers(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        if not line.startswith("%"):
            break
        key, sep, value = line[1:].partition(":")
        if sep:
            out[key.strip()] = value.strip()
    return out


def load(name: str) -> CorpusProgram:
    text = resources.files(__name__).joinpath(name + ".lp").read_text(encoding="utf-8")
    h = _headers(text)
    return CorpusProgram(
        name=name,
        text=text,
        covers=frozenset(c.strip() for c in h.get("covers", "").split(",") if c.strip()),
        crosscheck=h.get("crosscheck", "no") == "yes",
        large=h.get("size") == "large",
    )


def names() -> list[str]:
    return sorted(
        entry.name[:-3]
        for entry in resources.files(__name__).iterdir()
        if entry.name.endswith(".lp")
    )


def load_all() -> list[CorpusProgram]:
    return [load(n) for n in names()]
