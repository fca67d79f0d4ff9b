"""Two-sorted first-order formulas over a program signature.

There are two sorts: the program sort, over all precomputed terms, and the
integer sort, over numerals only.  Formulas are immutable trees; negation is
``Implies(f, FALSUM)`` and truth is the empty conjunction.
"""

from __future__ import annotations

import enum
import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from . import syntax
from .syntax import INF, SUP, Numeral, Precomputed, Symbol, relation_holds

log = logging.getLogger(__name__)


class Sort(enum.Enum):
    PROGRAM = "program"
    INTEGER = "integer"


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    sort: Sort = Sort.PROGRAM

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Arith:
    """Integer-sorted function application: ``+``, ``-``, ``*`` or ``abs``."""

    op: str
    args: tuple

    def __post_init__(self):
        if self.op not in ("+", "-", "*", "abs"):
            raise ValueError(f"unknown function constant {self.op!r}")


Term = Union[Numeral, Symbol, syntax.Inf, syntax.Sup, Var, Arith]


def add(a, b) -> Arith:
    return Arith("+", (a, b))


def sub(a, b) -> Arith:
    return Arith("-", (a, b))


def mul(a, b) -> Arith:
    return Arith("*", (a, b))


def absval(a) -> Arith:
    return Arith("abs", (a,))


# --------------------------------------------------------------------- formulas


@dataclass(frozen=True, slots=True)
class Atom:
    name: str
    args: tuple = ()


@dataclass(frozen=True, slots=True)
class UAtom:
    """Atom over the predicate variable paired with ``name`` by the SM star."""

    name: str
    args: tuple = ()


@dataclass(frozen=True, slots=True)
class Compare:
    rel: str
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Falsum:
    pass


@dataclass(frozen=True, slots=True)
class And:
    items: tuple


@dataclass(frozen=True, slots=True)
class Or:
    items: tuple


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Forall:
    vars: tuple
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    vars: tuple
    body: "Formula"


Formula = Union[Atom, UAtom, Compare, Falsum, And, Or, Implies, Forall, Exists]

FALSUM = Falsum()
TRUE = And(())


def neg(f: Formula) -> Implies:
    return Implies(f, FALSUM)


def conj(items: Iterable[Formula]) -> Formula:
    """Conjunction, with a single conjunct standing for itself."""
    items = tuple(items)
    return items[0] if len(items) == 1 else And(items)


def forall(vs: Sequence[Var], body: Formula) -> Formula:
    return Forall(tuple(vs), body) if vs else body


def exists(vs: Sequence[Var], body: Formula) -> Formula:
    return Exists(tuple(vs), body) if vs else body


def eq(a, b) -> Compare:
    return Compare("=", a, b)


# ------------------------------------------------------------- free variables


def term_vars(t) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Arith):
        for a in t.args:
            yield from term_vars(a)


@lru_cache(maxsize=None)
def free_vars(f: Formula) -> frozenset:
    """Free variables of ``f`` (cached; formulas are immutable)."""
    if isinstance(f, (Atom, UAtom)):
        return frozenset(v for a in f.args for v in term_vars(a))
    if isinstance(f, Compare):
        return frozenset(itertools.chain(term_vars(f.left), term_vars(f.right)))
    if isinstance(f, Falsum):
        return frozenset()
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_vars(g) for g in f.items))
    if isinstance(f, Implies):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - frozenset(f.vars)
    raise TypeError(f"not a formula: {f!r}")


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def all_vars(f: Formula) -> set[str]:
    """Names of every variable occurring in ``f``, bound or free."""
    out: set[str] = set()

    def visit(g):
        if isinstance(g, (Atom, UAtom)):
            out.update(v.name for a in g.args for v in term_vars(a))
        elif isinstance(g, Compare):
            out.update(v.name for v in itertools.chain(term_vars(g.left), term_vars(g.right)))
        elif isinstance(g, (And, Or)):
            for h in g.items:
                visit(h)
        elif isinstance(g, Implies):
            visit(g.left)
            visit(g.right)
        elif isinstance(g, (Forall, Exists)):
            out.update(v.name for v in g.vars)
            visit(g.body)

    visit(f)
    return out


def universal_closure(f: Formula, leading: Sequence[Var] = ()) -> Formula:
    """Bind ``leading`` first, then remaining free variables by name."""
    free = free_vars(f)
    first = [v for v in leading if v in free]
    rest = sorted(free - set(first), key=lambda v: (v.name, v.sort.value))
    return forall(first + rest, f)


# ------------------------------------------------------------ alpha-equivalence


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    """Structural equality up to consistent renaming of bound variables."""
    return _alpha(f, g, {}, {})


def _alpha_term(s, t, ls: dict, rs: dict) -> bool:
    if isinstance(s, Var) and isinstance(t, Var):
        if s.sort != t.sort:
            return False
        if s in ls or t in rs:
            return ls.get(s) == t and rs.get(t) == s
        return s == t
    if isinstance(s, Arith) and isinstance(t, Arith):
        return s.op == t.op and len(s.args) == len(t.args) and all(
            _alpha_term(a, b, ls, rs) for a, b in zip(s.args, t.args)
        )
    return type(s) is type(t) and not isinstance(s, (Var, Arith)) and s == t


def _alpha(f, g, ls: dict, rs: dict) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, (Atom, UAtom)):
        return f.name == g.name and len(f.args) == len(g.args) and all(
            _alpha_term(a, b, ls, rs) for a, b in zip(f.args, g.args)
        )
    if isinstance(f, Compare):
        return f.rel == g.rel and _alpha_term(f.left, g.left, ls, rs) and _alpha_term(f.right, g.right, ls, rs)
    if isinstance(f, Falsum):
        return True
    if isinstance(f, (And, Or)):
        return len(f.items) == len(g.items) and all(_alpha(a, b, ls, rs) for a, b in zip(f.items, g.items))
    if isinstance(f, Implies):
        return _alpha(f.left, g.left, ls, rs) and _alpha(f.right, g.right, ls, rs)
    if isinstance(f, (Forall, Exists)):
        if len(f.vars) != len(g.vars) or any(a.sort != b.sort for a, b in zip(f.vars, g.vars)):
            return False
        ls2, rs2 = dict(ls), dict(rs)
        for a, b in zip(f.vars, g.vars):
            ls2[a] = b
            rs2[b] = a
        return _alpha(f.body, g.body, ls2, rs2)
    raise TypeError(f)


# ------------------------------------------------------------------ signature


@dataclass(frozen=True)
class ProgramSignature:
    predicates: tuple  # (name, arity) pairs, every argument program-sorted
    comparisons: tuple = ("<", ">", "<=", ">=")
    sorts: tuple = (Sort.PROGRAM, Sort.INTEGER)

    def __contains__(self, symbol) -> bool:
        return symbol in self.predicates


def build_signature(program: syntax.Program) -> ProgramSignature:
    return ProgramSignature(tuple(sorted(syntax.predicates(program))))


# ------------------------------------------------------ standard interpretations


def bounded_universe(int_bound: int, constants: Iterable[Symbol] = ()) -> tuple:
    """Program-sort universe: constants, numerals in [-N, N], inf and sup."""
    if int_bound < 0:
        raise ValueError("int_bound must be non-negative")
    elems = {INF, SUP, *constants}
    elems.update(Numeral(n) for n in range(-int_bound, int_bound + 1))
    return tuple(sorted(elems, key=syntax.precomputed_key))


@dataclass(frozen=True)
class StandardInterpretation:
    """Finite approximation of a standard interpretation.

    Every precomputed term denotes itself and arithmetic is exact; only the
    quantifier ranges are bounded (numerals in ``[-int_bound, int_bound]``
    plus the given constants, ``#inf`` and ``#sup``).
    """

    universe: tuple
    int_bound: int
    true_atoms: frozenset = frozenset()
    integers: tuple = field(init=False)

    def __post_init__(self):
        ints = tuple(t for t in self.universe if isinstance(t, Numeral))
        object.__setattr__(self, "integers", ints)
        members = set(self.universe)
        for a in self.true_atoms:
            if any(t not in members for t in a.args):
                raise ValueError(f"true atom {a} mentions a term outside the universe")

    @classmethod
    def for_program(cls, program: syntax.Program, int_bound: int, true_atoms: Iterable = ()):
        return cls(bounded_universe(int_bound, syntax.symbolic_constants(program)), int_bound, frozenset(true_atoms))

    def domain(self, sort: Sort) -> tuple:
        return self.integers if sort is Sort.INTEGER else self.universe

    def in_bound(self, t: Precomputed) -> bool:
        return not isinstance(t, Numeral) or -self.int_bound <= t.value <= self.int_bound


def eval_term(t, env: dict, diagnostics: list | None = None, bound: int | None = None):
    """Value of an FO term under a standard interpretation and assignment."""
    if isinstance(t, Var):
        return env[t]
    if isinstance(t, Arith):
        vals = [eval_term(a, env, diagnostics, bound) for a in t.args]
        for v in vals:
            if not isinstance(v, Numeral):
                raise TypeError(f"integer function {t.op} applied to non-numeral {v}")
        if t.op == "abs":
            r = abs(vals[0].value)
        elif t.op == "+":
            r = vals[0].value + vals[1].value
        elif t.op == "-":
            r = vals[0].value - vals[1].value
        else:
            r = vals[0].value * vals[1].value
        if diagnostics is not None and bound is not None and abs(r) > bound:
            diagnostics.append(f"arithmetic value {r} outside [-{bound}, {bound}]")
        return Numeral(r)
    return t


def fo_satisfies(interp: StandardInterpretation, f: Formula, diagnostics: list | None = None) -> bool:
    """Classical satisfaction of a sentence by a bounded standard interpretation."""
    if not is_sentence(f):
        raise ValueError("formula has free variables")
    return _sat(interp, f, {}, diagnostics)


def _sat(interp, f, env, diag) -> bool:
    if isinstance(f, Atom):
        args = tuple(eval_term(a, env, diag, interp.int_bound) for a in f.args)
        return syntax.Atom(f.name, args) in interp.true_atoms
    if isinstance(f, Compare):
        a = eval_term(f.left, env, diag, interp.int_bound)
        b = eval_term(f.right, env, diag, interp.int_bound)
        return relation_holds(f.rel, a, b)
    if isinstance(f, Falsum):
        return False
    if isinstance(f, And):
        return all(_sat(interp, g, env, diag) for g in f.items)
    if isinstance(f, Or):
        return any(_sat(interp, g, env, diag) for g in f.items)
    if isinstance(f, Implies):
        return not _sat(interp, f.left, env, diag) or _sat(interp, f.right, env, diag)
    if isinstance(f, (Forall, Exists)):
        domains = [interp.domain(v.sort) for v in f.vars]
        test = all if isinstance(f, Forall) else any
        return test(
            _sat(interp, f.body, {**env, **dict(zip(f.vars, vals))}, diag)
            for vals in itertools.product(*domains)
        )
    if isinstance(f, UAtom):
        raise ValueError("predicate variables cannot be evaluated; SM formulas are render-only")
    raise TypeError(f)


# ---------------------------------------------------------------- SM operator


def sm_star(f: Formula, preds: Sequence[tuple[str, int]]) -> Formula:
    """``F*(u)``: intensional atoms become atoms over paired predicate variables.

    Subformulas without intensional atoms are returned unchanged; for an
    implication this drops the redundant copy ``(G → H) ∧ (G → H)``.
    """
    p = set(preds)

    def mentions(g) -> bool:
        if isinstance(g, Atom):
            return (g.name, len(g.args)) in p
        if isinstance(g, (And, Or)):
            return any(mentions(h) for h in g.items)
        if isinstance(g, Implies):
            return mentions(g.left) or mentions(g.right)
        if isinstance(g, (Forall, Exists)):
            return mentions(g.body)
        return False

    def star(g):
        if not mentions(g):
            return g
        if isinstance(g, Atom):
            return UAtom(g.name, g.args) if (g.name, len(g.args)) in p else g
        if isinstance(g, (Compare, Falsum, UAtom)):
            return g
        if isinstance(g, And):
            return And(tuple(star(h) for h in g.items))
        if isinstance(g, Or):
            return Or(tuple(star(h) for h in g.items))
        if isinstance(g, Implies):
            return And((Implies(star(g.left), star(g.right)), g))
        if isinstance(g, Forall):
            return Forall(g.vars, star(g.body))
        if isinstance(g, Exists):
            return Exists(g.vars, star(g.body))
        raise TypeError(g)

    return star(f)


def _leq(u_side: bool, name: str, arity: int) -> Formula:
    ws = tuple(Var(f"W{i + 1}") for i in range(arity))
    u, p = UAtom(name, ws), Atom(name, ws)
    return forall(ws, Implies(u, p) if u_side else Implies(p, u))


def sm_render(theory: Sequence[Formula], preds: Sequence[tuple[str, int]], style: str = "unicode") -> str:
    """Render ``SM_p[F] = F ∧ ¬∃u((u < p) ∧ F*(u))`` for a theory; not evaluable."""
    sym = _STYLES[style]
    f = conj(theory) if theory else TRUE
    body = render(f, style)
    uvars = " ".join(f"u_{n}" for n, _ in preds)
    if not preds:
        return f"{body} {sym['and']} {sym['not']}{sym['exists']}()({sym['false']})"
    below = conj([_leq(True, n, a) for n, a in preds])
    above = conj([_leq(False, n, a) for n, a in preds])
    less = And((below, neg(above)))
    star = sm_star(f, preds)
    return (
        f"{body} {sym['and']} {sym['not']}{sym['exists']}{uvars}"
        f"({render(less, style)} {sym['and']} {render(star, style)})"
    )


# ------------------------------------------------------------------ rendering

_STYLES = {
    "unicode": {
        "and": "∧", "or": "∨", "imp": "→", "not": "¬", "true": "⊤", "false": "⊥",
        "forall": "∀", "exists": "∃", "ne": "≠", "le": "≤", "ge": "≥", "times": "×",
    },
    "ascii": {
        "and": "&", "or": "|", "imp": "->", "not": "~", "true": "#true", "false": "#false",
        "forall": "forall ", "exists": "exists ", "ne": "!=", "le": "<=", "ge": ">=", "times": "*",
    },
}


def render_term(t, style: str = "ascii") -> str:
    if isinstance(t, Arith):
        if t.op == "abs":
            return f"|{render_term(t.args[0], style)}|"
        op = _STYLES[style]["times"] if t.op == "*" else t.op
        return f"({render_term(t.args[0], style)} {op} {render_term(t.args[1], style)})"
    return str(t)


def _args(args, style) -> str:
    return "(" + ", ".join(render_term(a, style) for a in args) + ")" if args else ""


def render(f: Formula, style: str = "ascii") -> str:
    s = _STYLES[style]
    if isinstance(f, Atom):
        return f.name + _args(f.args, style)
    if isinstance(f, UAtom):
        return f"u_{f.name}" + _args(f.args, style)
    if isinstance(f, Compare):
        rel = {"!=": s["ne"], "<=": s["le"], ">=": s["ge"]}.get(f.rel, f.rel)
        return f"{render_term(f.left, style)} {rel} {render_term(f.right, style)}"
    if isinstance(f, Falsum):
        return s["false"]
    if isinstance(f, (And, Or)):
        if not f.items:
            return s["true"] if isinstance(f, And) else s["false"]
        op = f" {s['and']} " if isinstance(f, And) else f" {s['or']} "
        return "(" + op.join(render(g, style) for g in f.items) + ")"
    if isinstance(f, Implies):
        if isinstance(f.right, Falsum):
            inner = render(f.left, style)
            tight = isinstance(f.left, (Atom, UAtom, Falsum)) or (
                isinstance(f.left, Implies) and isinstance(f.left.right, Falsum)
            )
            return s["not"] + (inner if tight else _wrap(inner))
        return f"({render(f.left, style)} {s['imp']} {render(f.right, style)})"
    if isinstance(f, (Forall, Exists)):
        q = s["forall"] if isinstance(f, Forall) else s["exists"]
        vs = " ".join(v.name for v in f.vars)
        return f"{q}{vs} {_wrap(render(f.body, style))}"
    raise TypeError(f)


def _wrap(text: str) -> str:
    return text if text.startswith("(") and _balanced_outer(text) else f"({text})"


def _balanced_outer(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and i < len(text) - 1:
            return False
    return True


def render_theory(theory: Sequence[Formula], style: str = "ascii") -> str:
    return "".join(render(f, style) + ".\n" for f in theory)


# ----------------------------------------------------------------------- JSON

THEORY_SCHEMA = "aspsem.fo-theory/1"


def term_to_json(t) -> dict:
    if isinstance(t, Var):
        return {"type": "var", "name": t.name, "sort": t.sort.value}
    if isinstance(t, Arith):
        return {"type": "apply", "op": t.op, "args": [term_to_json(a) for a in t.args]}
    return syntax.term_to_json(t)


def term_from_json(d: dict):
    if d["type"] == "var":
        return Var(d["name"], Sort(d["sort"]))
    if d["type"] == "apply":
        return Arith(d["op"], tuple(term_from_json(a) for a in d["args"]))
    return syntax.term_from_json(d)


def to_json(f: Formula) -> dict:
    if isinstance(f, (Atom, UAtom)):
        kind = "atom" if isinstance(f, Atom) else "uatom"
        return {"type": kind, "name": f.name, "args": [term_to_json(a) for a in f.args]}
    if isinstance(f, Compare):
        return {"type": "compare", "rel": f.rel, "left": term_to_json(f.left), "right": term_to_json(f.right)}
    if isinstance(f, Falsum):
        return {"type": "falsum"}
    if isinstance(f, (And, Or)):
        return {"type": "and" if isinstance(f, And) else "or", "items": [to_json(g) for g in f.items]}
    if isinstance(f, Implies):
        return {"type": "implies", "left": to_json(f.left), "right": to_json(f.right)}
    if isinstance(f, (Forall, Exists)):
        return {
            "type": "forall" if isinstance(f, Forall) else "exists",
            "vars": [term_to_json(v) for v in f.vars],
            "body": to_json(f.body),
        }
    raise TypeError(f)


def from_json(d: dict) -> Formula:
    kind = d["type"]
    if kind in ("atom", "uatom"):
        cls = Atom if kind == "atom" else UAtom
        return cls(d["name"], tuple(term_from_json(a) for a in d["args"]))
    if kind == "compare":
        return Compare(d["rel"], term_from_json(d["left"]), term_from_json(d["right"]))
    if kind == "falsum":
        return FALSUM
    if kind in ("and", "or"):
        return (And if kind == "and" else Or)(tuple(from_json(g) for g in d["items"]))
    if kind == "implies":
        return Implies(from_json(d["left"]), from_json(d["right"]))
    if kind in ("forall", "exists"):
        return (Forall if kind == "forall" else Exists)(
            tuple(term_from_json(v) for v in d["vars"]), from_json(d["body"])
        )
    raise ValueError(f"unknown formula type {kind!r}")


def theory_to_json(theory: Sequence[Formula]) -> dict:
    return {"schema": THEORY_SCHEMA, "sentences": [to_json(f) for f in theory]}


def dumps_theory(theory: Sequence[Formula]) -> str:
    return json.dumps(theory_to_json(theory), indent=2, sort_keys=True)
