"""Translation of programs into two-sorted first-order sentences.

``tau_b`` handles body elements relative to the rule's global variables;
``tau_star_rule`` wraps a rule into a closed sentence.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from . import fol, syntax
from .fol import FALSUM, Sort, Var
from .syntax import (
    BasicLiteral,
    Comparison,
    ConditionalLiteral,
    Falsum,
    Negation,
    Program,
    Rule,
)
from .values import val_formula


def _names(prefix: str, first_bare: bool, avoid: set[str]) -> Iterator[str]:
    if first_bare and prefix not in avoid:
        yield prefix
    n = 0
    while True:
        n += 1
        name = f"{prefix}{n}"
        if name not in avoid:
            yield name


def _fresh_vars(prefix: str, count: int, avoid: set[str], first_bare: bool) -> tuple[Var, ...]:
    gen = _names(prefix, first_bare, avoid)
    return tuple(Var(next(gen), Sort.PROGRAM) for _ in range(count))


def _literal_formula(atom: fol.Atom, negation: Negation) -> fol.Formula:
    for _ in range(int(negation)):
        atom = fol.neg(atom)
    return atom


def _tau_b_basic(lit: BasicLiteral, avoid: set[str]) -> fol.Formula:
    args = lit.atom.args
    zs = _fresh_vars("Z", len(args), avoid, first_bare=True)
    avoid_all = avoid | {z.name for z in zs}
    vals = [val_formula(t, z, avoid_all) for t, z in zip(args, zs)]
    lit_f = _literal_formula(fol.Atom(lit.atom.predicate, zs), lit.negation)
    return fol.exists(zs, fol.And((*vals, lit_f)) if vals else lit_f)


def _tau_b_comparison(c: Comparison, avoid: set[str]) -> fol.Formula:
    z1, z2 = _fresh_vars("Z", 2, avoid, first_bare=False)
    avoid_all = avoid | {z1.name, z2.name}
    return fol.Exists(
        (z1, z2),
        fol.And((val_formula(c.left, z1, avoid_all), val_formula(c.right, z2, avoid_all), fol.Compare(c.rel, z1, z2))),
    )


def _tau_b_simple(e, avoid: set[str]) -> fol.Formula:
    if isinstance(e, Falsum):
        return FALSUM
    if isinstance(e, BasicLiteral):
        return _tau_b_basic(e, avoid)
    if isinstance(e, Comparison):
        return _tau_b_comparison(e, avoid)
    raise TypeError(f"not a body element: {e!r}")


def bind_locals(local_vars: Sequence[Var], body: fol.Formula) -> fol.Formula:
    """Universal binder over a conditional literal's local variables."""
    return fol.forall(local_vars, body)


def tau_b(e, z_vars: Sequence[str], avoid: Iterable[str] = ()) -> fol.Formula:
    """Translate a body element relative to the global variables ``z_vars``.

    A conditional literal with no conditions translates as its head alone;
    otherwise it becomes ``∀X(conditions → head)`` with X its variables that
    are not global.  ``avoid`` lists names the fresh binders must not use;
    every variable of ``e`` is always avoided.
    """
    used = set(syntax.variables(e)) | set(z_vars) | set(avoid)
    if not isinstance(e, ConditionalLiteral):
        return _tau_b_simple(e, used)
    head = _tau_b_simple(e.head, used)
    if not e.conditions:
        return head
    conds = fol.conj(_tau_b_simple(c, used) for c in e.conditions)
    local = [Var(v, Sort.PROGRAM) for v in syntax.variables(e) if v not in set(z_vars)]
    return bind_locals(local, fol.Implies(conds, head))


def choice_guard(head: fol.Atom) -> list[fol.Formula]:
    """Extra antecedent conjuncts that make a basic-rule template a choice."""
    return [fol.neg(fol.neg(head))]


def tau_star_rule(rule: Rule) -> fol.Formula:
    """Closed first-order sentence for one rule."""
    z_names = syntax.global_variables(rule)
    rule_vars = set(syntax.variables(rule))
    zs = [Var(n, Sort.PROGRAM) for n in z_names]
    body = [tau_b(b, z_names, rule_vars) for b in rule.body]
    if rule.kind == "constraint":
        return fol.universal_closure(fol.Implies(fol.conj(body), FALSUM), zs)
    atom = rule.head.atom if rule.kind == "choice" else rule.head
    vs = _fresh_vars("V", len(atom.args), rule_vars, first_bare=False)
    avoid = rule_vars | {v.name for v in vs}
    vals = [val_formula(t, v, avoid) for t, v in zip(atom.args, vs)]
    head = fol.Atom(atom.predicate, vs)
    antecedent = [*vals, *body]
    if rule.kind == "choice":
        antecedent += choice_guard(head)
    return fol.universal_closure(fol.Implies(fol.conj(antecedent), head), [*vs, *zs])


def tau_star_program(program: Program) -> list[fol.Formula]:
    return [tau_star_rule(r) for r in program.rules]
