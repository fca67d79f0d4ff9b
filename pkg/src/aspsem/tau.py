"""Instantiation-based translation of programs into infinitary formulas.

A rule is instantiated by replacing its global variables with universe
elements; each closed instance then maps to an infinitary formula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import infinitary as inf
from .errors import RefusalError
from .syntax import (
    Atom,
    BasicLiteral,
    Comparison,
    ConditionalLiteral,
    Falsum,
    Negation,
    Program,
    Rule,
    global_variables,
    relation_holds,
    substitute,
    variables,
)
from .values import DEFAULT_INTERVAL_CAP, eval_tuple_values, eval_values

DEFAULT_INSTANCE_CAP = 100_000


@dataclass(frozen=True)
class RuleInstance:
    rule: Rule
    substitution: tuple  # (variable name, precomputed term) pairs

    def binding(self) -> dict:
        return dict(self.substitution)


def _tuples(names: Sequence[str], universe: Sequence, cap: int, what: str):
    count = len(universe) ** len(names)
    if count > cap:
        raise RefusalError(what, count, cap)
    return itertools.product(universe, repeat=len(names))


def instances(rule: Rule, universe: Sequence, cap: int = DEFAULT_INSTANCE_CAP) -> list[RuleInstance]:
    """All closed instances of ``rule`` over ``universe``, in universe order."""
    names = global_variables(rule)
    out = []
    for vals in _tuples(names, universe, cap, f"instantiating {len(names)} global variables"):
        sub = tuple(zip(names, vals))
        out.append(RuleInstance(substitute(rule, dict(sub)), sub))
    return out


def _literal(atom: Atom, negation: Negation):
    f = atom
    for _ in range(int(negation)):
        f = inf.neg(f)
    return f


def tau_closed(
    e,
    universe: Sequence,
    interval_cap: int = DEFAULT_INTERVAL_CAP,
    local_cap: int = DEFAULT_INSTANCE_CAP,
):
    """Translate a closed body element (or a list of them) into a formula."""
    if isinstance(e, (list, tuple)):
        return inf.conj(tau_closed(x, universe, interval_cap, local_cap) for x in e)
    if isinstance(e, Falsum):
        return inf.BOT
    if isinstance(e, BasicLiteral):
        tuples = eval_tuple_values(e.atom.args, interval_cap)
        return inf.disj(_literal(Atom(e.atom.predicate, r), e.negation) for r in tuples)
    if isinstance(e, Comparison):
        left = eval_values(e.left, interval_cap).values
        right = eval_values(e.right, interval_cap).values
        holds = any(relation_holds(e.rel, a, b) for a in left for b in right)
        return inf.TOP if holds else inf.BOT
    if isinstance(e, ConditionalLiteral):
        if not e.conditions:
            return tau_closed(e.head, universe, interval_cap, local_cap)
        names = variables(e)
        parts = []
        for vals in _tuples(names, universe, local_cap, f"expanding {len(names)} local variables"):
            inst = substitute(e, dict(zip(names, vals)))
            parts.append(
                inf.Implies(
                    tau_closed(list(inst.conditions), universe, interval_cap, local_cap),
                    tau_closed(inst.head, universe, interval_cap, local_cap),
                )
            )
        return inf.conj(parts)
    raise TypeError(f"not a body element: {e!r}")


def tau_instance(inst: Rule, universe: Sequence, interval_cap: int = DEFAULT_INTERVAL_CAP,
                 local_cap: int = DEFAULT_INSTANCE_CAP):
    """Formula for one closed rule instance."""
    body = tau_closed(list(inst.body), universe, interval_cap, local_cap)
    if inst.kind == "constraint":
        return inf.neg(body)
    atom = inst.head.atom if inst.kind == "choice" else inst.head
    heads = [Atom(atom.predicate, r) for r in eval_tuple_values(atom.args, interval_cap)]
    if inst.kind == "choice":
        return inf.Implies(body, inf.conj(inf.Disj((h, inf.neg(h))) for h in heads))
    return inf.Implies(body, inf.conj(heads))


def tau_rule(
    rule: Rule,
    universe: Sequence,
    instance_cap: int = DEFAULT_INSTANCE_CAP,
    interval_cap: int = DEFAULT_INTERVAL_CAP,
):
    """Conjunction of the translations of all instances of ``rule``."""
    return inf.conj(
        tau_instance(i.rule, universe, interval_cap, instance_cap)
        for i in instances(rule, universe, instance_cap)
    )


def tau_program(
    program: Program,
    universe: Sequence,
    instance_cap: int = DEFAULT_INSTANCE_CAP,
    interval_cap: int = DEFAULT_INTERVAL_CAP,
) -> list:
    """One formula per rule, in source order."""
    return [tau_rule(r, universe, instance_cap, interval_cap) for r in program.rules]
