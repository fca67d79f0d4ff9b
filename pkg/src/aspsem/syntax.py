"""Abstract syntax, parser and renderer for programs with conditional literals.

The concrete syntax follows clingo conventions::

    {asg(V,C)} :- vtx(V), col(C).
    :- not asg(V,C) : col(C); vtx(V).
    q(1..3).  r(X\\2) :- q(X), X != 2.

Body elements are separated by ``;``.  A ``;``-separated segment without a
``:`` may itself list several plain literals separated by ``,``; inside a
conditional literal everything after ``:`` is a ``,``-separated condition list.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ParseError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


# --------------------------------------------------------------------- terms


@dataclass(frozen=True, slots=True)
class Numeral:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class Symbol:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Inf:
    def __str__(self) -> str:
        return "#inf"


@dataclass(frozen=True, slots=True)
class Sup:
    def __str__(self) -> str:
        return "#sup"


INF = Inf()
SUP = Sup()

ARITH_OPS = ("+", "-", "*", "/", "\\", "..")
_PRECEDENCE = {"..": 1, "+": 2, "-": 2, "*": 3, "/": 3, "\\": 3}


@dataclass(frozen=True, slots=True)
class BinOp:
    op: str
    left: "Term"
    right: "Term"

    def __post_init__(self):
        if self.op not in ARITH_OPS:
            raise ValueError(f"unknown operation {self.op!r}")

    def __str__(self) -> str:
        return render_term(self)


@dataclass(frozen=True, slots=True)
class Abs:
    arg: "Term"

    def __str__(self) -> str:
        return render_term(self)


Precomputed = Union[Numeral, Symbol, Inf, Sup]
Term = Union[Numeral, Symbol, Variable, Inf, Sup, BinOp, Abs]


def negate(t: Term) -> BinOp:
    """``-t``, which the language treats as an abbreviation of ``0 - t``."""
    return BinOp("-", Numeral(0), t)


def is_precomputed(t) -> bool:
    return isinstance(t, (Numeral, Symbol, Inf, Sup))


# ----------------------------------------------------------- total order


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def precomputed_key(t: Precomputed) -> tuple:
    """Sort key realising the total order on precomputed terms.

    ``#inf`` < numerals (by value) < symbolic constants (by UTF-8 bytes) < ``#sup``.
    """
    if isinstance(t, Numeral):
        return (1, t.value, b"")
    if isinstance(t, Symbol):
        return (2, 0, t.name.encode("utf-8"))
    if isinstance(t, Inf):
        return (0, 0, b"")
    if isinstance(t, Sup):
        return (3, 0, b"")
    raise TypeError(f"not a precomputed term: {t!r}")


def compare_precomputed(a: Precomputed, b: Precomputed) -> Ordering:
    ka, kb = precomputed_key(a), precomputed_key(b)
    if ka < kb:
        return Ordering.LT
    if ka > kb:
        return Ordering.GT
    return Ordering.EQ


RELATIONS = ("=", "!=", "<", ">", "<=", ">=")


def relation_holds(rel: str, a: Precomputed, b: Precomputed) -> bool:
    c = compare_precomputed(a, b)
    if rel == "=":
        return c == Ordering.EQ
    if rel == "!=":
        return c != Ordering.EQ
    if rel == "<":
        return c == Ordering.LT
    if rel == ">":
        return c == Ordering.GT
    if rel == "<=":
        return c != Ordering.GT
    if rel == ">=":
        return c != Ordering.LT
    raise ValueError(f"unknown comparison {rel!r}")


# ------------------------------------------------------- literals and rules


@dataclass(frozen=True, slots=True)
class Atom:
    predicate: str
    args: tuple = ()

    @property
    def signature(self) -> tuple[str, int]:
        return (self.predicate, len(self.args))

    def __str__(self) -> str:
        return render_atom(self)


class Negation(enum.IntEnum):
    NONE = 0
    NOT = 1
    NOT_NOT = 2


@dataclass(frozen=True, slots=True)
class BasicLiteral:
    atom: Atom
    negation: Negation = Negation.NONE

    def __str__(self) -> str:
        return render_literal(self)


@dataclass(frozen=True, slots=True)
class Comparison:
    rel: str
    left: Term
    right: Term

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown comparison {self.rel!r}")

    def __str__(self) -> str:
        return render_literal(self)


@dataclass(frozen=True, slots=True)
class Falsum:
    def __str__(self) -> str:
        return "#false"


FALSUM = Falsum()

Literal = Union[BasicLiteral, Comparison]


@dataclass(frozen=True, slots=True)
class ConditionalLiteral:
    """``head : conditions``; plain body literals have no conditions."""

    head: Union[BasicLiteral, Comparison, Falsum]
    conditions: tuple = ()

    def __str__(self) -> str:
        return render_conditional(self)


@dataclass(frozen=True, slots=True)
class Choice:
    atom: Atom


Head = Union[Atom, Choice, Falsum]


@dataclass(frozen=True, slots=True)
class Rule:
    head: Head
    body: tuple = ()

    @property
    def kind(self) -> str:
        if isinstance(self.head, Atom):
            return "basic"
        if isinstance(self.head, Choice):
            return "choice"
        return "constraint"

    def __str__(self) -> str:
        return render_rule(self)


@dataclass(frozen=True, slots=True)
class Program:
    rules: tuple = ()

    def __str__(self) -> str:
        return render_program(self)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)


# ----------------------------------------------------------------- traversal


def term_variables(t: Term) -> Iterator[str]:
    if isinstance(t, Variable):
        yield t.name
    elif isinstance(t, BinOp):
        yield from term_variables(t.left)
        yield from term_variables(t.right)
    elif isinstance(t, Abs):
        yield from term_variables(t.arg)


def variables(expr) -> list[str]:
    """Variables of any syntactic expression, in first-occurrence order."""
    seen: dict[str, None] = {}
    for v in _iter_vars(expr):
        seen.setdefault(v, None)
    return list(seen)


def _iter_vars(expr) -> Iterator[str]:
    if isinstance(expr, (Numeral, Symbol, Variable, Inf, Sup, BinOp, Abs)):
        yield from term_variables(expr)
    elif isinstance(expr, Atom):
        for a in expr.args:
            yield from term_variables(a)
    elif isinstance(expr, BasicLiteral):
        yield from _iter_vars(expr.atom)
    elif isinstance(expr, Comparison):
        yield from term_variables(expr.left)
        yield from term_variables(expr.right)
    elif isinstance(expr, ConditionalLiteral):
        yield from _iter_vars(expr.head)
        for c in expr.conditions:
            yield from _iter_vars(c)
    elif isinstance(expr, Choice):
        yield from _iter_vars(expr.atom)
    elif isinstance(expr, Rule):
        yield from _iter_vars(expr.head)
        for b in expr.body:
            yield from _iter_vars(b)
    elif isinstance(expr, (tuple, list)):
        for e in expr:
            yield from _iter_vars(e)
    elif not isinstance(expr, Falsum):
        raise TypeError(f"unexpected expression {expr!r}")


def conditional_globals(cl: ConditionalLiteral) -> list[str]:
    """Variables occurring in the head of ``cl`` but not in its conditions."""
    local = set(variables(cl.conditions))
    return [v for v in variables(cl.head) if v not in local]


def global_variables(rule: Rule) -> list[str]:
    """Global variables of a rule, in first-occurrence order.

    Head variables are global, as is every variable of a plain literal; a
    variable of a conditional literal is global when it occurs in the
    literal's head but not in its conditions.
    """
    seen: dict[str, None] = {}
    for v in variables(rule.head):
        seen.setdefault(v, None)
    for cl in rule.body:
        for v in conditional_globals(cl):
            seen.setdefault(v, None)
    return list(seen)


def predicates(expr) -> list[tuple[str, int]]:
    """Predicate symbols ``(name, arity)`` occurring in ``expr``, in order."""
    found: dict[tuple[str, int], None] = {}
    for a in _iter_atoms(expr):
        found.setdefault(a.signature, None)
    return list(found)


def _iter_atoms(expr) -> Iterator[Atom]:
    if isinstance(expr, Program):
        for r in expr.rules:
            yield from _iter_atoms(r)
    elif isinstance(expr, Rule):
        yield from _iter_atoms(expr.head)
        for b in expr.body:
            yield from _iter_atoms(b)
    elif isinstance(expr, Atom):
        yield expr
    elif isinstance(expr, Choice):
        yield expr.atom
    elif isinstance(expr, BasicLiteral):
        yield expr.atom
    elif isinstance(expr, ConditionalLiteral):
        yield from _iter_atoms(expr.head)
        for c in expr.conditions:
            yield from _iter_atoms(c)


def symbolic_constants(expr) -> list[Symbol]:
    found: dict[Symbol, None] = {}
    for t in _iter_terms(expr):
        if isinstance(t, Symbol):
            found.setdefault(t, None)
    return list(found)


def _iter_terms(expr) -> Iterator[Term]:
    if isinstance(expr, (Numeral, Symbol, Variable, Inf, Sup)):
        yield expr
    elif isinstance(expr, BinOp):
        yield expr
        yield from _iter_terms(expr.left)
        yield from _iter_terms(expr.right)
    elif isinstance(expr, Abs):
        yield expr
        yield from _iter_terms(expr.arg)
    elif isinstance(expr, Atom):
        for a in expr.args:
            yield from _iter_terms(a)
    elif isinstance(expr, (BasicLiteral, Choice)):
        yield from _iter_terms(expr.atom)
    elif isinstance(expr, Comparison):
        yield from _iter_terms(expr.left)
        yield from _iter_terms(expr.right)
    elif isinstance(expr, ConditionalLiteral):
        yield from _iter_terms(expr.head)
        for c in expr.conditions:
            yield from _iter_terms(c)
    elif isinstance(expr, Rule):
        yield from _iter_terms(expr.head)
        for b in expr.body:
            yield from _iter_terms(b)
    elif isinstance(expr, Program):
        for r in expr.rules:
            yield from _iter_terms(r)


def numerals(expr) -> list[int]:
    return sorted({t.value for t in _iter_terms(expr) if isinstance(t, Numeral)})


def substitute(expr, mapping: dict):
    """Replace variables by terms; ``mapping`` maps variable names to terms."""
    if not mapping:
        return expr
    if isinstance(expr, Variable):
        return mapping.get(expr.name, expr)
    if isinstance(expr, (Numeral, Symbol, Inf, Sup, Falsum)):
        return expr
    if isinstance(expr, BinOp):
        return BinOp(expr.op, substitute(expr.left, mapping), substitute(expr.right, mapping))
    if isinstance(expr, Abs):
        return Abs(substitute(expr.arg, mapping))
    if isinstance(expr, Atom):
        return Atom(expr.predicate, tuple(substitute(a, mapping) for a in expr.args))
    if isinstance(expr, BasicLiteral):
        return BasicLiteral(substitute(expr.atom, mapping), expr.negation)
    if isinstance(expr, Comparison):
        return Comparison(expr.rel, substitute(expr.left, mapping), substitute(expr.right, mapping))
    if isinstance(expr, ConditionalLiteral):
        return ConditionalLiteral(
            substitute(expr.head, mapping),
            tuple(substitute(c, mapping) for c in expr.conditions),
        )
    if isinstance(expr, Choice):
        return Choice(substitute(expr.atom, mapping))
    if isinstance(expr, Rule):
        return Rule(substitute(expr.head, mapping), tuple(substitute(b, mapping) for b in expr.body))
    raise TypeError(f"cannot substitute into {expr!r}")


# ------------------------------------------------------------------ rendering


def render_term(t: Term) -> str:
    if isinstance(t, BinOp):
        if t.op == "-" and t.left == Numeral(0):
            inner = render_term(t.right)
            if isinstance(t.right, (Variable, Symbol, Inf, Sup, Abs)):
                return "-" + inner
            return f"-({inner})"
        prec = _PRECEDENCE[t.op]
        left = render_term(t.left)
        right = render_term(t.right)
        if _term_prec(t.left) < prec:
            left = f"({left})"
        if _term_prec(t.right) <= prec:
            right = f"({right})"
        return f"{left}{t.op}{right}"
    if isinstance(t, Abs):
        return f"|{render_term(t.arg)}|"
    return str(t)


def _term_prec(t: Term) -> int:
    if isinstance(t, BinOp) and not (t.op == "-" and t.left == Numeral(0)):
        return _PRECEDENCE[t.op]
    return 10


def render_atom(a: Atom) -> str:
    if not a.args:
        return a.predicate
    return f"{a.predicate}({','.join(render_term(t) for t in a.args)})"


def render_literal(lit) -> str:
    if isinstance(lit, BasicLiteral):
        return "not " * int(lit.negation) + render_atom(lit.atom)
    if isinstance(lit, Comparison):
        return f"{render_term(lit.left)} {lit.rel} {render_term(lit.right)}"
    if isinstance(lit, Falsum):
        return "#false"
    raise TypeError(lit)


def render_conditional(cl: ConditionalLiteral) -> str:
    head = render_literal(cl.head)
    if not cl.conditions:
        return head
    return f"{head} : {', '.join(render_literal(c) for c in cl.conditions)}"


def render_rule(r: Rule) -> str:
    if isinstance(r.head, Atom):
        head = render_atom(r.head)
    elif isinstance(r.head, Choice):
        head = "{" + render_atom(r.head.atom) + "}"
    else:
        head = ""
    if not r.body:
        return f"{head}." if head else "#false."
    body = "; ".join(render_conditional(b) for b in r.body)
    return f"{head} :- {body}." if head else f":- {body}."


def render_program(p: Program) -> str:
    return "\n".join(render_rule(r) for r in p.rules) + ("\n" if p.rules else "")


# ---------------------------------------------------------------------- parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<int>[0-9]+)
  | (?P<hash>\#[a-z]+)
  | (?P<ident>[a-z][A-Za-z0-9_']*)
  | (?P<var>[A-Z][A-Za-z0-9_']*)
  | (?P<op>:-|\.\.|!=|<>|<=|>=|==|[:;,.(){}|+\-*/\\=<>])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


_REL_TOKENS = {"=": "=", "==": "=", "!=": "!=", "<>": "!=", "<": "<", ">": ">", "<=": "<=", ">=": ">="}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> _Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("op", "hash", "ident")

    def advance(self) -> _Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise ParseError(f"{message}, found {found!r}", tok.line, tok.column)

    # grammar
    def program(self) -> Program:
        rules = []
        while self.tok.kind != "eof":
            rules.append(self.rule())
        return Program(tuple(rules))

    def rule(self) -> Rule:
        if self.at(":-"):
            head: Head = FALSUM
        elif self.at("#false"):
            self.advance()
            head = FALSUM
            if not self.at(":-") and not self.at("."):
                self.error("expected ':-' after '#false' head")
        elif self.at("{"):
            self.advance()
            head = Choice(self.atom())
            self.expect("}")
        else:
            head = self.atom()
        body: tuple = ()
        if self.at(":-"):
            self.advance()
            body = self.body()
        self.expect(".")
        return Rule(head, body)

    def body(self) -> tuple:
        elements = []
        while True:
            elements.extend(self.segment())
            if self.at(";"):
                self.advance()
                continue
            return tuple(elements)

    def segment(self) -> list[ConditionalLiteral]:
        first = self.conditional_head()
        if self.at(":"):
            self.advance()
            conds = [self.literal()]
            while self.at(","):
                self.advance()
                conds.append(self.literal())
            return [ConditionalLiteral(first, tuple(conds))]
        items = [ConditionalLiteral(first)]
        while self.at(","):
            self.advance()
            items.append(ConditionalLiteral(self.literal()))
        if self.at(":"):
            self.error("conditional literal must be separated from other body elements by ';'")
        return items

    def conditional_head(self):
        if self.at("#false"):
            self.advance()
            return FALSUM
        return self.literal()

    def literal(self) -> Literal:
        if self.at("not") and self.tok.kind == "ident":
            depth = 0
            while self.at("not") and self.peek().kind in ("ident",):
                self.advance()
                depth += 1
                if depth > 2:
                    self.error("at most two negations are allowed")
            return BasicLiteral(self.atom(), Negation(depth))
        if self.tok.kind == "ident" and self.tok.text not in ("not",):
            nxt = self.peek()
            if nxt.text == "(" or nxt.text not in _REL_TOKENS and nxt.text not in ARITH_OPS:
                return BasicLiteral(self.atom())
        left = self.term()
        if self.tok.text not in _REL_TOKENS or self.tok.kind != "op":
            self.error("expected a comparison operator")
        rel = _REL_TOKENS[self.advance().text]
        return Comparison(rel, left, self.term())

    def atom(self) -> Atom:
        if self.tok.kind != "ident" or self.tok.text == "not":
            self.error("expected a predicate name")
        name = self.advance().text
        args: list[Term] = []
        if self.at("("):
            self.advance()
            args.append(self.term())
            while self.at(","):
                self.advance()
                args.append(self.term())
            self.expect(")")
        return Atom(name, tuple(args))

    # terms, lowest precedence first
    def term(self) -> Term:
        left = self.additive()
        while self.at(".."):
            self.advance()
            left = BinOp("..", left, self.additive())
        return left

    def additive(self) -> Term:
        left = self.multiplicative()
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance().text
            left = BinOp(op, left, self.multiplicative())
        return left

    def multiplicative(self) -> Term:
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in ("*", "/", "\\"):
            op = self.advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Term:
        if self.at("-"):
            minus = self.advance()
            if self.tok.kind == "int":
                return self.integer(minus)
            return negate(self.unary())
        return self.primary()

    def integer(self, minus: _Token | None = None) -> Numeral:
        tok = self.advance()
        value = int(tok.text)
        if minus is not None:
            value = -value
        if not INT64_MIN <= value <= INT64_MAX:
            where = minus or tok
            raise ParseError(f"integer {value} outside the 64-bit range", where.line, where.column)
        return Numeral(value)

    def primary(self) -> Term:
        tok = self.tok
        if tok.kind == "int":
            return self.integer()
        if tok.kind == "var":
            self.advance()
            return Variable(tok.text)
        if tok.kind == "hash" and tok.text in ("#inf", "#sup"):
            self.advance()
            return INF if tok.text == "#inf" else SUP
        if tok.kind == "ident" and tok.text != "not":
            self.advance()
            if tok.text == "inf":
                return INF
            if tok.text == "sup":
                return SUP
            if self.at("("):
                self.error("function symbols are not supported")
            return Symbol(tok.text)
        if self.at("("):
            self.advance()
            inner = self.term()
            self.expect(")")
            return inner
        if self.at("|"):
            self.advance()
            inner = self.term()
            self.expect("|")
            return Abs(inner)
        self.error("expected a term")


def parse_program(text: str) -> Program:
    """Parse program text; raises :class:`ParseError` with line and column."""
    return _Parser(text).program()


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        p.error("trailing input after term")
    return t


def parse_rule(text: str) -> Rule:
    rules = parse_program(text).rules
    if len(rules) != 1:
        raise ValueError(f"expected exactly one rule, got {len(rules)}")
    return rules[0]


# ------------------------------------------------------------------------ JSON

AST_SCHEMA = "aspsem.ast/1"


def term_to_json(t: Term) -> dict:
    if isinstance(t, Numeral):
        return {"type": "numeral", "value": t.value}
    if isinstance(t, Symbol):
        return {"type": "symbol", "name": t.name}
    if isinstance(t, Variable):
        return {"type": "variable", "name": t.name}
    if isinstance(t, Inf):
        return {"type": "inf"}
    if isinstance(t, Sup):
        return {"type": "sup"}
    if isinstance(t, BinOp):
        return {"type": "binop", "op": t.op, "left": term_to_json(t.left), "right": term_to_json(t.right)}
    if isinstance(t, Abs):
        return {"type": "abs", "arg": term_to_json(t.arg)}
    raise TypeError(t)


def term_from_json(d: dict) -> Term:
    kind = d["type"]
    if kind == "numeral":
        return Numeral(d["value"])
    if kind == "symbol":
        return Symbol(d["name"])
    if kind == "variable":
        return Variable(d["name"])
    if kind == "inf":
        return INF
    if kind == "sup":
        return SUP
    if kind == "binop":
        return BinOp(d["op"], term_from_json(d["left"]), term_from_json(d["right"]))
    if kind == "abs":
        return Abs(term_from_json(d["arg"]))
    raise ValueError(f"unknown term type {kind!r}")


def atom_to_json(a: Atom) -> dict:
    return {"predicate": a.predicate, "args": [term_to_json(t) for t in a.args]}


def _element_to_json(e) -> dict:
    if isinstance(e, BasicLiteral):
        return {"type": "literal", "negation": int(e.negation), "atom": atom_to_json(e.atom)}
    if isinstance(e, Comparison):
        return {"type": "comparison", "rel": e.rel, "left": term_to_json(e.left), "right": term_to_json(e.right)}
    if isinstance(e, Falsum):
        return {"type": "falsum"}
    raise TypeError(e)


def _element_from_json(d: dict):
    kind = d["type"]
    if kind == "literal":
        a = d["atom"]
        atom = Atom(a["predicate"], tuple(term_from_json(t) for t in a["args"]))
        return BasicLiteral(atom, Negation(d["negation"]))
    if kind == "comparison":
        return Comparison(d["rel"], term_from_json(d["left"]), term_from_json(d["right"]))
    if kind == "falsum":
        return FALSUM
    raise ValueError(f"unknown body element type {kind!r}")


def rule_to_json(r: Rule) -> dict:
    if isinstance(r.head, Atom):
        head = {"type": "atom", "atom": atom_to_json(r.head)}
    elif isinstance(r.head, Choice):
        head = {"type": "choice", "atom": atom_to_json(r.head.atom)}
    else:
        head = {"type": "falsum"}
    body = [
        {"head": _element_to_json(b.head), "conditions": [_element_to_json(c) for c in b.conditions]}
        for b in r.body
    ]
    return {"kind": r.kind, "head": head, "body": body}


def rule_from_json(d: dict) -> Rule:
    h = d["head"]
    if h["type"] == "falsum":
        head: Head = FALSUM
    else:
        atom = Atom(h["atom"]["predicate"], tuple(term_from_json(t) for t in h["atom"]["args"]))
        head = atom if h["type"] == "atom" else Choice(atom)
    body = tuple(
        ConditionalLiteral(_element_from_json(b["head"]), tuple(_element_from_json(c) for c in b["conditions"]))
        for b in d["body"]
    )
    return Rule(head, body)


def program_to_json(p: Program) -> dict:
    return {"schema": AST_SCHEMA, "rules": [rule_to_json(r) for r in p.rules]}


def program_from_json(d: dict) -> Program:
    if d.get("schema") != AST_SCHEMA:
        raise ValueError(f"unsupported schema {d.get('schema')!r}")
    return Program(tuple(rule_from_json(r) for r in d["rules"]))


def dumps_program(p: Program) -> str:
    return json.dumps(program_to_json(p), indent=2, sort_keys=True)
