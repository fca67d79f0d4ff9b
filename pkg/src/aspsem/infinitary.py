"""Infinitary propositional formulas over precomputed atoms.

Conjunctions and disjunctions are set-formers, so structurally equal
members collapse.  Every universe here is finite, so every formula is
finitely materialised.

Two evaluators are provided: plain recursive ones (``prop_satisfies``,
``ht_satisfies``) that follow the definitions line by line, and a compiled
numpy ``Evaluator`` that checks many interpretations per pass.  The model
searches use the compiled one; the test suite checks they agree.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import RefusalError
from .syntax import Atom, precomputed_key, render_atom, term_from_json, term_to_json

log = logging.getLogger(__name__)

DEFAULT_EQUILIBRIUM_LIMIT = 20
DEFAULT_EQUIVALENCE_LIMIT = 12
_CHUNK = 1 << 16


class _Frozen:
    __slots__ = ("_hash",)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self) -> int:
        return self._hash


class Conj(_Frozen):
    __slots__ = ("items",)

    def __init__(self, items: Iterable = ()):
        items = frozenset(items)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "_hash", hash(("conj", items)))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is Conj and self._hash == other._hash and self.items == other.items
        )

    __hash__ = _Frozen.__hash__

    def __repr__(self) -> str:
        return f"Conj({set(self.items)!r})" if self.items else "TOP"


class Disj(_Frozen):
    __slots__ = ("items",)

    def __init__(self, items: Iterable = ()):
        items = frozenset(items)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "_hash", hash(("disj", items)))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is Disj and self._hash == other._hash and self.items == other.items
        )

    __hash__ = _Frozen.__hash__

    def __repr__(self) -> str:
        return f"Disj({set(self.items)!r})" if self.items else "BOT"


class Implies(_Frozen):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "_hash", hash(("imp", left, right)))

    def __eq__(self, other) -> bool:
        return self is other or (
            type(other) is Implies
            and self._hash == other._hash
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = _Frozen.__hash__

    def __repr__(self) -> str:
        return f"Implies({self.left!r}, {self.right!r})"


TOP = Conj()
BOT = Disj()


def neg(f) -> Implies:
    return Implies(f, BOT)


def conj(items: Iterable) -> object:
    """Conjunction that lets a single member stand for itself."""
    items = frozenset(items)
    return next(iter(items)) if len(items) == 1 else Conj(items)


def disj(items: Iterable) -> object:
    items = frozenset(items)
    return next(iter(items)) if len(items) == 1 else Disj(items)


def is_formula(f) -> bool:
    return isinstance(f, (Atom, Conj, Disj, Implies))


def rank(f) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, (Conj, Disj)):
        return 1 + max((rank(g) for g in f.items), default=0) if f.items else 0
    return 1 + max(rank(f.left), rank(f.right))


def _children(f):
    if isinstance(f, (Conj, Disj)):
        return f.items
    if isinstance(f, Implies):
        return (f.left, f.right)
    return ()


def atoms_of(fs) -> frozenset:
    """Atoms occurring in a formula or an iterable of formulas."""
    roots = [fs] if is_formula(fs) else list(fs)
    seen: set[int] = set()
    out: set = set()
    stack = roots
    while stack:
        f = stack.pop()
        if id(f) in seen:
            continue
        seen.add(id(f))
        if isinstance(f, Atom):
            out.add(f)
        else:
            stack.extend(_children(f))
    return frozenset(out)


def size(f) -> int:
    """Number of distinct subformula objects (DAG size)."""
    seen: set[int] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if id(g) not in seen:
            seen.add(id(g))
            stack.extend(_children(g))
    return len(seen)


# ---------------------------------------------------------- satisfaction


@dataclass(frozen=True)
class HTInterpretation:
    here: frozenset
    there: frozenset

    def __post_init__(self):
        object.__setattr__(self, "here", frozenset(self.here))
        object.__setattr__(self, "there", frozenset(self.there))
        if not self.here <= self.there:
            raise ValueError("here-world must be a subset of the there-world")

    def to_json(self) -> dict:
        return {"here": [render_atom(a) for a in sort_atoms(self.here)],
                "there": [render_atom(a) for a in sort_atoms(self.there)]}

    def __str__(self) -> str:
        return f"<{render_model(self.here)}, {render_model(self.there)}>"


def prop_satisfies(s, f) -> bool:
    """Classical satisfaction of ``f`` by the set of true atoms ``s``."""
    memo: dict[int, bool] = {}

    def sat(g):
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            r = g in s
        elif isinstance(g, Conj):
            r = all(sat(h) for h in g.items)
        elif isinstance(g, Disj):
            r = any(sat(h) for h in g.items)
        elif isinstance(g, Implies):
            r = not sat(g.left) or sat(g.right)
        else:
            raise TypeError(f"not an infinitary formula: {g!r}")
        memo[key] = r
        return r

    return sat(f)


def ht_satisfies(i: HTInterpretation, f) -> bool:
    """Here-and-there satisfaction of ``f`` by ``⟨here, there⟩``."""
    memo: dict[int, bool] = {}

    def sat(g):
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            r = g in i.here
        elif isinstance(g, Conj):
            r = all(sat(h) for h in g.items)
        elif isinstance(g, Disj):
            r = any(sat(h) for h in g.items)
        elif isinstance(g, Implies):
            r = prop_satisfies(i.there, g) and (not sat(g.left) or sat(g.right))
        else:
            raise TypeError(f"not an infinitary formula: {g!r}")
        memo[key] = r
        return r

    return sat(f)


# ------------------------------------------------------ compiled evaluator

_ATOM, _CONJ, _DISJ, _IMP = range(4)


class Evaluator:
    """Batch evaluator for the conjunction of a fixed set of formulas.

    Interpretations are boolean matrices with one row per interpretation
    and one column per atom of ``atoms``; atoms missing from ``atoms`` are
    false everywhere.  A there-matrix with a single row broadcasts against
    a many-row here-matrix.
    """

    def __init__(self, formulas: Iterable, atoms: Sequence):
        self.atoms = list(atoms)
        self.column = {a: k for k, a in enumerate(self.atoms)}
        self.kinds: list[int] = []
        self.args: list = []
        index: dict[int, int] = {}
        self._keep = []
        self.roots = [self._compile(f, index) for f in formulas]

    def _compile(self, f, index: dict) -> int:
        # Post-order without recursion so deep formulas cannot overflow the stack.
        stack = [(f, False)]
        while stack:
            g, ready = stack.pop()
            if id(g) in index:
                continue
            kids = list(_children(g))
            if not ready and kids:
                stack.append((g, True))
                stack.extend((h, False) for h in kids if id(h) not in index)
                continue
            if isinstance(g, Atom):
                kind, arg = _ATOM, self.column.get(g, -1)
            elif isinstance(g, Conj):
                kind, arg = _CONJ, [index[id(h)] for h in kids]
            elif isinstance(g, Disj):
                kind, arg = _DISJ, [index[id(h)] for h in kids]
            elif isinstance(g, Implies):
                kind, arg = _IMP, (index[id(g.left)], index[id(g.right)])
            else:
                raise TypeError(f"not an infinitary formula: {g!r}")
            index[id(g)] = len(self.kinds)
            self.kinds.append(kind)
            self.args.append(arg)
            self._keep.append(g)
        return index[id(f)]

    def _classical(self, x: np.ndarray) -> list:
        rows = x.shape[0]
        vals: list = []
        for kind, arg in zip(self.kinds, self.args):
            if kind == _ATOM:
                v = x[:, arg] if arg >= 0 else np.zeros(rows, dtype=bool)
            elif kind == _CONJ:
                v = np.ones(rows, dtype=bool)
                for c in arg:
                    v = v & vals[c]
            elif kind == _DISJ:
                v = np.zeros(rows, dtype=bool)
                for c in arg:
                    v = v | vals[c]
            else:
                v = ~vals[arg[0]] | vals[arg[1]]
            vals.append(v)
        return vals

    def _combine(self, vals: list, rows: int) -> np.ndarray:
        out = np.ones(rows, dtype=bool)
        for r in self.roots:
            out = out & vals[r]
        return out

    def classical(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=bool)
        return self._combine(self._classical(x), x.shape[0])

    def ht(self, here: np.ndarray, there: np.ndarray) -> np.ndarray:
        here = np.asarray(here, dtype=bool)
        there = np.asarray(there, dtype=bool)
        rows = max(here.shape[0], there.shape[0])
        tvals = self._classical(there)
        vals: list = []
        for n, (kind, arg) in enumerate(zip(self.kinds, self.args)):
            if kind == _ATOM:
                v = here[:, arg] if arg >= 0 else np.zeros(here.shape[0], dtype=bool)
            elif kind == _CONJ:
                v = np.ones(rows, dtype=bool)
                for c in arg:
                    v = v & vals[c]
            elif kind == _DISJ:
                v = np.zeros(rows, dtype=bool)
                for c in arg:
                    v = v | vals[c]
            else:
                v = tvals[n] & (~vals[arg[0]] | vals[arg[1]])
            vals.append(v)
        return np.broadcast_to(self._combine(vals, rows), (rows,))

    def row(self, atoms: Iterable) -> np.ndarray:
        r = np.zeros((1, len(self.atoms)), dtype=bool)
        for a in atoms:
            if a in self.column:
                r[0, self.column[a]] = True
        return r


def _subset_rows(width: int, start: int, stop: int) -> np.ndarray:
    codes = np.arange(start, stop, dtype=np.int64)[:, None]
    return ((codes >> np.arange(width, dtype=np.int64)) & 1).astype(bool)


# ----------------------------------------------------------- stable models


def possible_atoms(fs: Iterable) -> frozenset:
    """Atoms that can belong to some stable model of ``fs``.

    Least set W such that, for every formula, its demanded atoms lie in W:
    an atom demands itself, conjunctions and disjunctions demand what their
    members demand, and ``P → Q`` demands what Q demands unless P cannot
    hold in any here-world inside W.  Every stable model is a subset of W.
    """
    fs = list(fs)
    w: set = set()
    while True:
        possible_memo: dict[int, bool] = {}

        def here_possible(g) -> bool:
            key = id(g)
            if key not in possible_memo:
                if isinstance(g, Atom):
                    possible_memo[key] = g in w
                elif isinstance(g, Conj):
                    possible_memo[key] = all(here_possible(h) for h in g.items)
                elif isinstance(g, Disj):
                    possible_memo[key] = any(here_possible(h) for h in g.items)
                else:
                    possible_memo[key] = True
            return possible_memo[key]

        demanded: set = set()
        visited: set[int] = set()
        stack = list(fs)
        while stack:
            g = stack.pop()
            if id(g) in visited:
                continue
            visited.add(id(g))
            if isinstance(g, Atom):
                demanded.add(g)
            elif isinstance(g, (Conj, Disj)):
                stack.extend(g.items)
            elif here_possible(g.left):
                stack.append(g.right)
        if demanded <= w:
            return frozenset(w)
        w |= demanded


def _check_limit(what: str, n: int, limit: int) -> None:
    if n > limit:
        raise RefusalError(what, n, limit)


def _is_minimal(ev: Evaluator, there_row: np.ndarray) -> bool:
    members = np.flatnonzero(there_row[0])
    k = len(members)
    total = 1 << k
    for start in range(0, total - 1, _CHUNK):
        stop = min(start + _CHUNK, total - 1)  # the last code is the there-world itself
        sub = _subset_rows(k, start, stop)
        here = np.zeros((sub.shape[0], there_row.shape[1]), dtype=bool)
        here[:, members] = sub
        if ev.ht(here, there_row).any():
            return False
    return True


def is_equilibrium(s_prime: Iterable, fs: Iterable, limit: int = DEFAULT_EQUILIBRIUM_LIMIT) -> bool:
    """Whether ``⟨S', S'⟩`` is an equilibrium model of the formulas ``fs``."""
    s_prime = frozenset(s_prime)
    _check_limit("equilibrium check", len(s_prime), limit)
    ev = Evaluator(list(fs), sort_atoms(s_prime))
    t = ev.row(s_prime)
    return bool(ev.classical(t)[0]) and _is_minimal(ev, t)


def stable_models(
    fs: Iterable,
    base: Iterable,
    limit: int = DEFAULT_EQUILIBRIUM_LIMIT,
    prune: bool = True,
) -> list[frozenset]:
    """All stable models of ``fs`` that are subsets of ``base``, in canonical order.

    With ``prune`` the search runs over ``possible_atoms(fs) ∩ base``
    instead of the whole base; ``limit`` bounds that effective base.
    """
    fs = list(fs)
    base = frozenset(base)
    effective = (possible_atoms(fs) & base) if prune else base
    _check_limit("stable model search", len(effective), limit)
    atoms = sort_atoms(effective)
    ev = Evaluator(fs, atoms)
    n = len(atoms)
    found = []
    for start in range(0, 1 << n, _CHUNK):
        rows = _subset_rows(n, start, min(start + _CHUNK, 1 << n))
        for r in np.flatnonzero(ev.classical(rows)):
            cand = rows[r : r + 1]
            if _is_minimal(ev, cand):
                found.append(frozenset(atoms[k] for k in np.flatnonzero(cand[0])))
    return sort_models(found)


# ------------------------------------------------------ strong equivalence


def ht_counterexample(a: Iterable, b: Iterable, base: Iterable, limit: int = DEFAULT_EQUIVALENCE_LIMIT):
    """An HT-interpretation over ``base`` telling ``a`` and ``b`` apart, or None.

    Atoms of ``base`` occurring in neither side cannot affect the outcome,
    so the sweep runs over the occurring ones and ``limit`` bounds those.
    """
    a, b = list(a), list(b)
    effective = frozenset(base) & (atoms_of(a) | atoms_of(b))
    _check_limit("here-and-there sweep", len(effective), limit)
    atoms = sort_atoms(effective)
    n = len(atoms)
    ev_a, ev_b = Evaluator(a, atoms), Evaluator(b, atoms)
    total = 3**n
    powers = 3 ** np.arange(n, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)[:, None]
        digits = (codes // powers) % 3
        here, there = digits == 2, digits >= 1
        diff = np.flatnonzero(ev_a.ht(here, there) != ev_b.ht(here, there))
        if diff.size:
            k = diff[0]
            return HTInterpretation(
                frozenset(atoms[c] for c in np.flatnonzero(here[k])),
                frozenset(atoms[c] for c in np.flatnonzero(there[k])),
            )
    return None


def ht_equivalent(a: Iterable, b: Iterable, base: Iterable, limit: int = DEFAULT_EQUIVALENCE_LIMIT) -> bool:
    """Whether two formula sets agree on every HT-interpretation over ``base``."""
    return ht_counterexample(a, b, base, limit) is None


# ------------------------------------------------------------ simplification


def simplify(f):
    """Strongly equivalent, smaller formula.

    Removes ⊤ from conjunctions and ⊥ from disjunctions, absorbs ⊥ in
    conjunctions and ⊤ in disjunctions, flattens nested set-formers of the
    same kind, collapses singletons, and rewrites ``⊥ → P`` and ``P → ⊤``
    to ⊤ and ``⊤ → P`` to P.
    """
    memo: dict[int, object] = {}
    keep = []

    def go(g):
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            r = g
        elif isinstance(g, Implies):
            left, right = go(g.left), go(g.right)
            if left == BOT or right == TOP:
                r = TOP
            elif left == TOP:
                r = right
            else:
                r = Implies(left, right)
        else:
            is_conj = isinstance(g, Conj)
            unit, zero = (TOP, BOT) if is_conj else (BOT, TOP)
            members: set = set()
            r = None
            for h in g.items:
                s = go(h)
                if s == zero:
                    r = zero
                    break
                if type(s) is type(g):
                    members.update(s.items)
                elif s != unit:
                    members.add(s)
            if r is None:
                r = conj(members) if is_conj else disj(members)
        memo[key] = r
        keep.append(g)
        return r

    return go(f)


# ------------------------------------------------------------------ ordering


def atom_key(a: Atom) -> tuple:
    return (a.predicate, len(a.args), tuple(precomputed_key(t) for t in a.args))


def sort_atoms(atoms: Iterable) -> list:
    return sorted(atoms, key=atom_key)


def model_key(m: Iterable) -> tuple:
    return tuple(atom_key(a) for a in sort_atoms(m))


def sort_models(models: Iterable) -> list[frozenset]:
    return sorted({frozenset(m) for m in models}, key=model_key)


def render_model(m: Iterable) -> str:
    return " ".join(render_atom(a) for a in sort_atoms(m))


# ----------------------------------------------------------------- rendering

_SYMBOLS = {
    "unicode": {"top": "⊤", "bot": "⊥", "and": "⋀", "or": "⋁", "imp": "→", "not": "¬"},
    "ascii": {"top": "#true", "bot": "#false", "and": "&", "or": "|", "imp": "->", "not": "~"},
}


def render(f, style: str = "unicode") -> str:
    """Deterministic text form; set members appear in sorted text order."""
    sym = _SYMBOLS[style]
    memo: dict[int, str] = {}
    keep = []

    def go(g) -> str:
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            s = render_atom(g)
        elif isinstance(g, (Conj, Disj)):
            if not g.items:
                s = sym["top"] if isinstance(g, Conj) else sym["bot"]
            else:
                op = sym["and"] if isinstance(g, Conj) else sym["or"]
                s = op + "{" + ", ".join(sorted(go(h) for h in g.items)) + "}"
        elif isinstance(g, Implies):
            if g.right == BOT:
                s = sym["not"] + go(g.left)
            else:
                s = f"({go(g.left)} {sym['imp']} {go(g.right)})"
        else:
            raise TypeError(f"not an infinitary formula: {g!r}")
        memo[key] = s
        keep.append(g)
        return s

    return go(f)


def render_set(fs: Iterable, style: str = "unicode") -> str:
    return "".join(line + "\n" for line in sorted(render(f, style) for f in fs))


# ---------------------------------------------------------------------- JSON

SCHEMA = "aspsem.infinitary/1"


def to_json(f) -> dict:
    if isinstance(f, Atom):
        return {"type": "atom", "predicate": f.predicate, "args": [term_to_json(t) for t in f.args]}
    if isinstance(f, (Conj, Disj)):
        items = sorted(f.items, key=render)
        return {"type": "conj" if isinstance(f, Conj) else "disj", "items": [to_json(g) for g in items]}
    if isinstance(f, Implies):
        return {"type": "implies", "left": to_json(f.left), "right": to_json(f.right)}
    raise TypeError(f"not an infinitary formula: {f!r}")


def from_json(d: dict):
    kind = d["type"]
    if kind == "atom":
        return Atom(d["predicate"], tuple(term_from_json(t) for t in d["args"]))
    if kind in ("conj", "disj"):
        return (Conj if kind == "conj" else Disj)(from_json(g) for g in d["items"])
    if kind == "implies":
        return Implies(from_json(d["left"]), from_json(d["right"]))
    raise ValueError(f"unknown formula type {kind!r}")


def dumps(fs: Iterable) -> str:
    items = sorted(fs, key=render)
    return json.dumps({"schema": SCHEMA, "formulas": [to_json(f) for f in items]}, indent=2, sort_keys=True)


def all_interpretations(base: Iterable):
    """Every HT-interpretation over ``base`` (3^n of them), for small oracles."""
    atoms = sort_atoms(base)
    for digits in itertools.product(range(3), repeat=len(atoms)):
        yield HTInterpretation(
            frozenset(a for a, d in zip(atoms, digits) if d == 2),
            frozenset(a for a, d in zip(atoms, digits) if d >= 1),
        )
