"""Independent reference implementations used as test oracles.

Nothing here calls into the code under test except for data types, so a
shared bug cannot make both sides agree.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from aspsem import fol
from aspsem import infinitary as inf
from aspsem.syntax import Abs, Atom, BinOp, Inf, Numeral, Sup, Symbol


# ----------------------------------------------------------------- arithmetic


def rational_round(i: int, j: int) -> int:
    """Round i/j toward zero using exact rationals: floor when non-negative, ceiling otherwise."""
    q = Fraction(i, j)
    return math.floor(q) if q >= 0 else math.ceil(q)


def rational_mod(i: int, j: int) -> int:
    return i - j * rational_round(i, j)


# ------------------------------------------------------------- term values


def _order_key(t):
    if isinstance(t, Inf):
        return (0,)
    if isinstance(t, Numeral):
        return (1, t.value)
    if isinstance(t, Symbol):
        return (2, t.name)
    return (3,)


def term_values(t) -> set:
    """Brute-force value set of a ground term."""
    if isinstance(t, (Numeral, Symbol, Inf, Sup)):
        return {t}
    if isinstance(t, Abs):
        return {Numeral(abs(v.value)) for v in term_values(t.arg) if isinstance(v, Numeral)}
    assert isinstance(t, BinOp), t
    lefts = [v.value for v in term_values(t.left) if isinstance(v, Numeral)]
    rights = [v.value for v in term_values(t.right) if isinstance(v, Numeral)]
    out = set()
    for a, b in itertools.product(lefts, rights):
        if t.op == "+":
            out.add(a + b)
        elif t.op == "-":
            out.add(a - b)
        elif t.op == "*":
            out.add(a * b)
        elif t.op == "/" and b != 0:
            out.add(rational_round(a, b))
        elif t.op == "\\" and b != 0:
            out.add(rational_mod(a, b))
        elif t.op == "..":
            out.update(range(a, b + 1))
    return {Numeral(v) for v in out}


def precomputed_less(a, b) -> bool:
    return _order_key(a) < _order_key(b)


# ----------------------------------------------- infinitary propositional logic


def classical(s: frozenset, f) -> bool:
    if isinstance(f, Atom):
        return f in s
    if isinstance(f, inf.Conj):
        return all(classical(s, g) for g in f.items)
    if isinstance(f, inf.Disj):
        return any(classical(s, g) for g in f.items)
    if isinstance(f, inf.Implies):
        return not classical(s, f.left) or classical(s, f.right)
    raise TypeError(f)


def here_there(here: frozenset, there: frozenset, f) -> bool:
    """Satisfaction in the logic of here-and-there by the pair (here, there)."""
    if isinstance(f, Atom):
        return f in here
    if isinstance(f, inf.Conj):
        return all(here_there(here, there, g) for g in f.items)
    if isinstance(f, inf.Disj):
        return any(here_there(here, there, g) for g in f.items)
    if isinstance(f, inf.Implies):
        return classical(there, f) and (
            not here_there(here, there, f.left) or here_there(here, there, f.right)
        )
    raise TypeError(f)


def subsets(atoms):
    atoms = sorted(atoms, key=str)
    for k in range(len(atoms) + 1):
        for c in itertools.combinations(atoms, k):
            yield frozenset(c)


def brute_stable_models(formulas, base) -> set:
    """Every S within base such that (S, S) is an equilibrium model."""
    formulas = list(formulas)
    found = set()
    for s in subsets(base):
        if not all(classical(s, f) for f in formulas):
            continue
        if any(
            all(here_there(h, s, f) for f in formulas) for h in subsets(s) if h != s
        ):
            continue
        found.add(s)
    return found


def brute_ht_equivalent(a, b, base) -> bool:
    for there in subsets(base):
        for here in subsets(there):
            if all(here_there(here, there, f) for f in a) != all(here_there(here, there, f) for f in b):
                return False
    return True


# ------------------------------------------------------------ first-order logic


def _subst_term(t, var, value):
    if t == var:
        return value
    if isinstance(t, fol.Arith):
        return fol.Arith(t.op, tuple(_subst_term(a, var, value) for a in t.args))
    return t


def _subst(f, var, value):
    if isinstance(f, (fol.Atom, fol.UAtom)):
        return type(f)(f.name, tuple(_subst_term(a, var, value) for a in f.args))
    if isinstance(f, fol.Compare):
        return fol.Compare(f.rel, _subst_term(f.left, var, value), _subst_term(f.right, var, value))
    if isinstance(f, fol.Falsum):
        return f
    if isinstance(f, (fol.And, fol.Or)):
        return type(f)(tuple(_subst(g, var, value) for g in f.items))
    if isinstance(f, fol.Implies):
        return fol.Implies(_subst(f.left, var, value), _subst(f.right, var, value))
    if var in f.vars:
        return f
    return type(f)(f.vars, _subst(f.body, var, value))


def _value(t):
    if isinstance(t, fol.Arith):
        vals = [_value(a).value for a in t.args]
        return Numeral({"+": lambda a, b: a + b, "-": lambda a, b: a - b,
                        "*": lambda a, b: a * b, "abs": abs}[t.op](*vals))
    return t


def fo_truth(universe, true_atoms, f) -> bool:
    """Classical truth by substituting universe elements for bound variables."""
    if isinstance(f, fol.Atom):
        return Atom(f.name, tuple(_value(a) for a in f.args)) in true_atoms
    if isinstance(f, fol.Compare):
        a, b = _value(f.left), _value(f.right)
        return {
            "=": a == b, "!=": a != b,
            "<": precomputed_less(a, b), ">": precomputed_less(b, a),
            "<=": not precomputed_less(b, a), ">=": not precomputed_less(a, b),
        }[f.rel]
    if isinstance(f, fol.Falsum):
        return False
    if isinstance(f, fol.And):
        return all(fo_truth(universe, true_atoms, g) for g in f.items)
    if isinstance(f, fol.Or):
        return any(fo_truth(universe, true_atoms, g) for g in f.items)
    if isinstance(f, fol.Implies):
        return not fo_truth(universe, true_atoms, f.left) or fo_truth(universe, true_atoms, f.right)
    var, rest = f.vars[0], f.vars[1:]
    inner = type(f)(rest, f.body) if rest else f.body
    domain = [u for u in universe if var.sort is fol.Sort.PROGRAM or isinstance(u, Numeral)]
    results = (fo_truth(universe, true_atoms, _subst(inner, var, u)) for u in domain)
    return all(results) if isinstance(f, fol.Forall) else any(results)


# ---------------------------------------------------------------- coloring


def proper_colorings(vertices, edges, colors) -> set:
    """Every total assignment of one color per vertex with no monochromatic edge."""
    out = set()
    for choice in itertools.product(colors, repeat=len(vertices)):
        colour_of = dict(zip(vertices, choice))
        if all(colour_of[u] != colour_of[v] for u, v in edges):
            out.add(frozenset(colour_of.items()))
    return out
