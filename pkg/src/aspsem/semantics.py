"""Answer sets by two independent routes, and the checks relating them.

``answer_sets`` grounds the first-order translation and takes stable
models; ``gringo_answer_sets`` takes stable models of the instantiation-based
translation.  ``verify_equivalence`` compares the two routes both formula by
formula (here-and-there sweep) and model by model.

Everything is relative to a finite universe: the program's symbolic
constants, the numerals in ``[-N, N]``, ``#inf`` and ``#sup``.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import fol
from . import infinitary as inf
from .config import Config
from .errors import RefusalError
from .grounder import PredicatePartition, ground_theory
from .syntax import Atom, Program, predicates, render_atom, symbolic_constants
from .tau import tau_program
from .taustar import tau_star_program

REPORT_SCHEMA = "aspsem.equivalence-report/1"


def universe(program: Program, int_bound: int) -> tuple:
    return fol.bounded_universe(int_bound, symbolic_constants(program))


def atom_base(program: Program, univ: Sequence, cap: int = 100_000) -> frozenset:
    """Every atom over the program's predicates with arguments from ``univ``."""
    preds = predicates(program)
    count = sum(len(univ) ** n for _, n in preds)
    if count > cap:
        raise RefusalError("atom base", count, cap)
    return frozenset(
        Atom(name, args) for name, n in preds for args in itertools.product(univ, repeat=n)
    )


def _config(config: Config | None, bound: int | None) -> Config:
    config = config or Config()
    if bound is not None and bound != config.int_bound:
        config = Config(**{**config.__dict__, "int_bound": bound})
    return config


def grounded_translation(program: Program, config: Config, diagnostics: list | None = None) -> list:
    """Grounding of the first-order translation under the standard partition.

    With every predicate intensional the grounding never consults the
    interpretation's atoms, so one grounding serves every interpretation.
    """
    interp = fol.StandardInterpretation.for_program(program, config.int_bound)
    part = PredicatePartition.standard(fol.build_signature(program))
    return ground_theory(
        interp, part, tau_star_program(program), simplify=True,
        cap=config.quantifier_cap, diagnostics=diagnostics,
    )


def instantiated_translation(program: Program, config: Config) -> list:
    return tau_program(
        program, universe(program, config.int_bound), config.instance_cap, config.interval_cap
    )


def answer_sets(program: Program, bound: int | None = None, config: Config | None = None) -> list[frozenset]:
    config = _config(config, bound)
    base = atom_base(program, universe(program, config.int_bound), config.instance_cap)
    return inf.stable_models(grounded_translation(program, config), base, config.eq_limit)


def gringo_answer_sets(program: Program, bound: int | None = None, config: Config | None = None) -> list[frozenset]:
    config = _config(config, bound)
    base = atom_base(program, universe(program, config.int_bound), config.instance_cap)
    return inf.stable_models(instantiated_translation(program, config), base, config.eq_limit)


def p_answer_sets(
    program: Program,
    intensional: Iterable[tuple[str, int]],
    bound: int | None = None,
    config: Config | None = None,
    extension: Iterable[Atom] | None = None,
) -> list[frozenset]:
    """Answer sets with only ``intensional`` predicates minimised.

    Each answer set is a stable model over the intensional atoms joined with
    the extension of the remaining predicates.  With ``extension`` given
    only that extension is used; otherwise every subset of the extensional
    part of the atom base is tried, which is refused beyond ``eq_limit``
    atoms.
    """
    config = _config(config, bound)
    univ = universe(program, config.int_bound)
    sig = fol.build_signature(program)
    part = PredicatePartition.split(sig, intensional)
    base = atom_base(program, univ, config.instance_cap)
    ext_base = inf.sort_atoms(a for a in base if a.signature in part.extensional)
    int_base = frozenset(a for a in base if a.signature in part.intensional)
    if extension is not None:
        extension = frozenset(extension)
        stray = extension - frozenset(ext_base)
        if stray:
            raise ValueError(f"extension atoms outside the extensional base: {inf.render_model(stray)}")
        extensions: Iterable = [extension]
    else:
        if len(ext_base) > config.eq_limit:
            raise RefusalError("enumerating extensional interpretations", len(ext_base), config.eq_limit)
        extensions = (
            frozenset(c)
            for k in range(len(ext_base) + 1)
            for c in itertools.combinations(ext_base, k)
        )
    theory = tau_star_program(program)
    found = []
    for ext in extensions:
        interp = fol.StandardInterpretation(univ, config.int_bound, ext)
        grounded = ground_theory(interp, part, theory, simplify=True, cap=config.quantifier_cap)
        for m in inf.stable_models(grounded, int_base, config.eq_limit):
            found.append(m | ext)
    return inf.sort_models(found)


# --------------------------------------------------------------- verification


@dataclass
class EquivalenceReport:
    program_id: str
    int_bound: int
    base_size: int
    verdict: str  # "equivalent" | "counterexample" | "refused"
    counterexample: inf.HTInterpretation | None = None
    answer_sets: list | None = None
    gringo_answer_sets: list | None = None
    limits: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def __post_init__(self):
        if (self.counterexample is not None) != (self.verdict == "counterexample"):
            raise ValueError("a counterexample is present exactly when the verdict says so")

    def to_json(self, timing: bool = True) -> dict:
        """JSON form; leave out ``timing`` for byte-stable output."""

        def models(ms):
            return None if ms is None else [[render_atom(a) for a in inf.sort_atoms(m)] for m in ms]

        out = {
            "schema": REPORT_SCHEMA,
            "program": self.program_id,
            "int_bound": self.int_bound,
            "base_size": self.base_size,
            "verdict": self.verdict,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
            "answer_sets": models(self.answer_sets),
            "gringo_answer_sets": models(self.gringo_answer_sets),
            "limits": self.limits,
            "notes": self.notes,
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)

    def render(self) -> str:
        lines = [
            f"program: {self.program_id}",
            f"int bound: {self.int_bound}",
            f"atom base: {self.base_size}",
            f"verdict: {self.verdict}",
        ]
        if self.counterexample is not None:
            lines.append(f"counterexample: {self.counterexample}")
        for label, ms in (("answer sets", self.answer_sets), ("gringo answer sets", self.gringo_answer_sets)):
            if ms is not None:
                lines.append(f"{label}: {len(ms)}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


def _model_witness(a: list, b: list, there: frozenset) -> inf.HTInterpretation:
    """HT-interpretation with there-world ``there`` separating ``a`` from ``b``.

    ``there`` is a stable model of exactly one side, so some here-world
    inside it is evaluated differently by the two sides.
    """
    atoms = inf.sort_atoms(there)
    for k in range(len(atoms), -1, -1):
        for here in itertools.combinations(atoms, k):
            i = inf.HTInterpretation(frozenset(here), there)
            if all(inf.ht_satisfies(i, f) for f in a) != all(inf.ht_satisfies(i, f) for f in b):
                return i
    raise AssertionError("models differ but no separating interpretation exists")


def verify_equivalence(
    program: Program,
    bound: int | None = None,
    config: Config | None = None,
    program_id: str = "<program>",
) -> EquivalenceReport:
    """Compare the grounded first-order translation with the instantiated one."""
    config = _config(config, bound)
    start = time.perf_counter()
    notes: list[str] = []
    univ = universe(program, config.int_bound)
    base = atom_base(program, univ, config.instance_cap)
    grounded = grounded_translation(program, config, notes)
    instantiated = instantiated_translation(program, config)

    witness = None
    swept = False
    try:
        witness = inf.ht_counterexample(grounded, instantiated, base, config.base_limit)
        swept = True
    except RefusalError as err:
        notes.append(f"here-and-there sweep refused: {err}")

    ours = theirs = None
    try:
        ours = inf.stable_models(grounded, base, config.eq_limit)
        theirs = inf.stable_models(instantiated, base, config.eq_limit)
    except RefusalError as err:
        notes.append(f"answer-set comparison refused: {err}")
        ours = theirs = None

    if ours is not None and ours != theirs:
        notes.append("answer sets differ between the two routes")
        if witness is None:
            differing = sorted(set(ours) ^ set(theirs), key=inf.model_key)[0]
            witness = _model_witness(grounded, instantiated, differing)

    if witness is not None:
        verdict = "counterexample"
    elif swept:
        verdict = "equivalent"
    else:
        verdict = "refused"
    return EquivalenceReport(
        program_id=program_id,
        int_bound=config.int_bound,
        base_size=len(base),
        verdict=verdict,
        counterexample=witness,
        answer_sets=ours,
        gringo_answer_sets=theirs,
        limits=config.limits(),
        notes=notes,
        seconds=time.perf_counter() - start,
    )
