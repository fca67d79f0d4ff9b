"""Grounding of first-order sentences into infinitary formulas.

Under a standard interpretation every precomputed term names itself, so
grounding evaluates terms directly: intensional atoms become atoms over the
evaluated arguments, extensional atoms and comparisons become ⊤ or ⊥, and
quantifiers expand into conjunctions or disjunctions over their sort.

``simplify=False`` produces the grounding exactly as defined.  With
``simplify=True`` the result is strongly equivalent but smaller: the
simplifications of ``infinitary.simplify`` are applied while grounding, and
quantifier instances are skipped as soon as a conjunct they depend on
grounds to ⊥ (such an instance contributes ⊥ to a disjunction, or a
trivially true implication to a conjunction).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import fol
from . import infinitary as inf
from .errors import RefusalError
from .fol import ProgramSignature, StandardInterpretation, eval_term
from .syntax import Atom, relation_holds

DEFAULT_QUANTIFIER_CAP = 1_000_000


@dataclass(frozen=True)
class PredicatePartition:
    intensional: frozenset
    extensional: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "intensional", frozenset(self.intensional))
        object.__setattr__(self, "extensional", frozenset(self.extensional))
        if self.intensional & self.extensional:
            raise ValueError("intensional and extensional predicates overlap")

    @classmethod
    def standard(cls, signature: ProgramSignature) -> "PredicatePartition":
        """Every program predicate intensional; only comparisons are extensional."""
        return cls(frozenset(signature.predicates))

    @classmethod
    def split(cls, signature: ProgramSignature, intensional: Iterable) -> "PredicatePartition":
        intensional = frozenset(intensional)
        unknown = intensional - set(signature.predicates)
        if unknown:
            raise ValueError(f"not program predicates: {sorted(unknown)}")
        return cls(intensional, frozenset(signature.predicates) - intensional)


class _Grounder:
    def __init__(self, interp, part, simplify, cap):
        self.interp = interp
        self.part = part
        self.simplify = simplify
        self.cap = cap
        self.memo: dict = {}
        self.fv: dict[int, tuple] = {}
        self.levels: dict = {}
        self.diagnostics: list[str] = []
        self._seen_diag: set[str] = set()
        self.members = set(interp.universe)

    def note(self, msg: str) -> None:
        if msg not in self._seen_diag:
            self._seen_diag.add(msg)
            self.diagnostics.append(msg)

    def free(self, f) -> tuple:
        key = id(f)
        if key not in self.fv:
            self.fv[key] = tuple(sorted(fol.free_vars(f), key=lambda v: (v.name, v.sort.value)))
        return self.fv[key]

    def term(self, t, env):
        val = eval_term(t, env)
        if val not in self.members:
            self.note(f"term value {val} lies outside the universe")
        return val

    def ground(self, f, env: dict):
        key = (id(f), tuple(env[v] for v in self.free(f)))
        hit = self.memo.get(key)
        if hit is None:
            hit = self._ground(f, env)
            self.memo[key] = hit
        return hit

    def _ground(self, f, env):
        if isinstance(f, fol.Falsum):
            return inf.BOT
        if isinstance(f, fol.Atom):
            atom = Atom(f.name, tuple(self.term(a, env) for a in f.args))
            if (f.name, len(f.args)) in self.part.extensional:
                return inf.TOP if atom in self.interp.true_atoms else inf.BOT
            return atom
        if isinstance(f, fol.Compare):
            holds = relation_holds(f.rel, eval_term(f.left, env), eval_term(f.right, env))
            return inf.TOP if holds else inf.BOT
        if isinstance(f, fol.And):
            return self._junction(f.items, env, conj=True)
        if isinstance(f, fol.Or):
            return self._junction(f.items, env, conj=False)
        if isinstance(f, fol.Implies):
            left = self.ground(f.left, env)
            if self.simplify:
                if left == inf.BOT:
                    return inf.TOP
                right = self.ground(f.right, env)
                if right == inf.TOP:
                    return inf.TOP
                return right if left == inf.TOP else inf.Implies(left, right)
            return inf.Implies(left, self.ground(f.right, env))
        if isinstance(f, (fol.Forall, fol.Exists)):
            return self._quantifier(f, env)
        if isinstance(f, fol.UAtom):
            raise ValueError("cannot ground a formula with predicate variables")
        raise TypeError(f"not a formula: {f!r}")

    def _junction(self, items, env, conj: bool):
        if not self.simplify:
            parts = [self.ground(g, env) for g in items]
            return inf.Conj(parts) if conj else inf.Disj(parts)
        unit, zero = (inf.TOP, inf.BOT) if conj else (inf.BOT, inf.TOP)
        kind = inf.Conj if conj else inf.Disj
        members: set = set()
        for g in items:
            s = self.ground(g, env)
            if s == zero:
                return zero
            if type(s) is kind:
                members.update(s.items)
            elif s != unit:
                members.add(s)
        return inf.conj(members) if conj else inf.disj(members)

    def _guards(self, f) -> list[list]:
        """Conjuncts to test after binding each quantified variable.

        For ∃ the body's conjuncts, for ∀ the antecedent conjuncts of an
        implication body; each is filed under the position of the last
        quantified variable it mentions.
        """
        key = id(f)
        if key in self.levels:
            return self.levels[key]
        body = f.body
        if isinstance(f, fol.Forall):
            body = body.left if isinstance(body, fol.Implies) else None
        conjuncts = [] if body is None else (list(body.items) if isinstance(body, fol.And) else [body])
        position = {v: k for k, v in enumerate(f.vars)}
        levels: list[list] = [[] for _ in f.vars]
        for c in conjuncts:
            ks = [position[v] for v in fol.free_vars(c) if v in position]
            if ks:
                levels[max(ks)].append(c)
        self.levels[key] = levels
        return levels

    def _quantifier(self, f, env):
        is_forall = isinstance(f, fol.Forall)
        domains = [self.interp.domain(v.sort) for v in f.vars]
        count = 1
        for d in domains:
            count *= len(d)
        if count > self.cap:
            raise RefusalError(f"expanding a quantifier over {len(f.vars)} variables", count, self.cap)
        if not self.simplify:
            return self._expand_raw(f, list(f.vars), env, is_forall)
        guards = self._guards(f)
        zero, unit = (inf.BOT, inf.TOP) if is_forall else (inf.TOP, inf.BOT)
        kind = inf.Conj if is_forall else inf.Disj
        members: set = set()

        def walk(k: int, env_k: dict) -> bool:
            if k == len(f.vars):
                s = self.ground(f.body, env_k)
                if s == zero:
                    return True
                if type(s) is kind:
                    members.update(s.items)
                elif s != unit:
                    members.add(s)
                return False
            for value in domains[k]:
                env_next = {**env_k, f.vars[k]: value}
                if any(self.ground(c, env_next) == inf.BOT for c in guards[k]):
                    continue
                if walk(k + 1, env_next):
                    return True
            return False

        if walk(0, env):
            return zero
        return inf.conj(members) if is_forall else inf.disj(members)

    def _expand_raw(self, f, vs: list, env, is_forall):
        var, rest = vs[0], vs[1:]
        parts = []
        for value in self.interp.domain(var.sort):
            env_next = {**env, var: value}
            parts.append(self._expand_raw(f, rest, env_next, is_forall) if rest else self.ground(f.body, env_next))
        return inf.Conj(parts) if is_forall else inf.Disj(parts)


def ground_formula(
    interp: StandardInterpretation,
    part: PredicatePartition,
    f: fol.Formula,
    simplify: bool = False,
    cap: int = DEFAULT_QUANTIFIER_CAP,
    diagnostics: list | None = None,
):
    """Ground a sentence; see the module docstring for ``simplify``."""
    if not fol.is_sentence(f):
        raise ValueError("only sentences can be grounded")
    g = _Grounder(interp, part, simplify, cap)
    out = g.ground(f, {})
    if diagnostics is not None:
        diagnostics.extend(g.diagnostics)
    return out


def ground_theory(
    interp: StandardInterpretation,
    part: PredicatePartition,
    theory: Sequence[fol.Formula],
    simplify: bool = False,
    cap: int = DEFAULT_QUANTIFIER_CAP,
    diagnostics: list | None = None,
) -> list:
    """Ground every sentence of a theory, in order."""
    return [ground_formula(interp, part, f, simplify, cap, diagnostics) for f in theory]


def ground_with(interp, part, f, env: dict, simplify: bool = True):
    """Ground a formula whose free variables are all bound by ``env``."""
    missing = fol.free_vars(f) - set(env)
    if missing:
        raise ValueError(f"unbound variables: {sorted(v.name for v in missing)}")
    return _Grounder(interp, part, simplify, DEFAULT_QUANTIFIER_CAP).ground(f, dict(env))

