"""Values of program terms.

Two views of the same notion: ``eval_values`` computes the set of
precomputed values of a ground term directly, and ``val_formula`` builds
the first-order formula stating that a variable is one of those values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import fol
from .errors import TruncationError
from .fol import And, Arith, Compare, Exists, Or, Sort, Var
from .syntax import Abs, BinOp, Inf, Numeral, Sup, Symbol, Variable

DEFAULT_INTERVAL_CAP = 10_000


def round_div(n1: int, n2: int) -> int:
    """Quotient rounded toward zero (floor when non-negative, ceiling otherwise)."""
    if n2 == 0:
        raise ZeroDivisionError("round_div with zero divisor")
    q = abs(n1) // abs(n2)
    return q if (n1 >= 0) == (n2 > 0) or n1 == 0 else -q


def mod_value(n1: int, n2: int) -> int:
    return n1 - n2 * round_div(n1, n2)


@dataclass(frozen=True)
class ValueSet:
    values: frozenset
    truncated: bool = False

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, item) -> bool:
        return item in self.values

    def numerals(self) -> list[int]:
        return sorted(v.value for v in self.values if isinstance(v, Numeral))


def eval_values(t, cap: int = DEFAULT_INTERVAL_CAP, allow_truncation: bool = False) -> ValueSet:
    """The set of precomputed values of a ground term.

    An interval with more than ``cap`` members raises ``TruncationError``
    unless ``allow_truncation`` is set, in which case the first ``cap``
    members are kept and the result is flagged.
    """
    flag = [False]
    vals = _values(t, cap, allow_truncation, flag)
    return ValueSet(frozenset(vals), flag[0])


def _ints(vals: Iterable) -> list[int]:
    return [v.value for v in vals if isinstance(v, Numeral)]


def _values(t, cap, allow, flag) -> set:
    if isinstance(t, (Numeral, Symbol, Inf, Sup)):
        return {t}
    if isinstance(t, Variable):
        raise ValueError(f"term is not ground: variable {t.name}")
    if isinstance(t, Abs):
        return {Numeral(abs(n)) for n in _ints(_values(t.arg, cap, allow, flag))}
    if not isinstance(t, BinOp):
        raise TypeError(f"not a term: {t!r}")
    left = _ints(_values(t.left, cap, allow, flag))
    right = _ints(_values(t.right, cap, allow, flag))
    if t.op == "..":
        if not left or not right:
            return set()
        lo, hi = min(left), max(right)
        size = max(0, hi - lo + 1)
        if size > cap:
            if not allow:
                raise TruncationError(f"interval {lo}..{hi}", size, cap)
            flag[0] = True
            hi = lo + cap - 1
        return {Numeral(m) for m in range(lo, hi + 1)}
    pairs = itertools.product(set(left), set(right))
    if t.op == "+":
        return {Numeral(a + b) for a, b in pairs}
    if t.op == "-":
        return {Numeral(a - b) for a, b in pairs}
    if t.op == "*":
        return {Numeral(a * b) for a, b in pairs}
    if t.op == "/":
        return {Numeral(round_div(a, b)) for a, b in pairs if b != 0}
    return {Numeral(mod_value(a, b)) for a, b in pairs if b != 0}


def eval_tuple_values(ts: Sequence, cap: int = DEFAULT_INTERVAL_CAP, allow_truncation: bool = False) -> set:
    """Cartesian product of the value sets of ``ts``; ``[]`` gives ``{()}``."""
    sets = [eval_values(t, cap, allow_truncation).values for t in ts]
    return set(itertools.product(*sets))


# --------------------------------------------------------------- val formulas


def fo_term(t):
    """A program term without operations, as an FO term."""
    if isinstance(t, Variable):
        return Var(t.name, Sort.PROGRAM)
    if isinstance(t, (Numeral, Symbol, Inf, Sup)):
        return t
    raise TypeError(f"not a basic term: {t!r}")


def _names_in(t) -> set[str]:
    if isinstance(t, Variable):
        return {t.name}
    if isinstance(t, Abs):
        return _names_in(t.arg)
    if isinstance(t, BinOp):
        return _names_in(t.left) | _names_in(t.right)
    return set()


class _Fresh:
    def __init__(self, avoid: set[str]):
        self.avoid = avoid
        self.n = 0

    def triple(self) -> tuple[Var, Var, Var]:
        while True:
            self.n += 1
            names = (f"I{self.n}", f"J{self.n}", f"K{self.n}")
            if not self.avoid.intersection(names):
                return tuple(Var(n, Sort.INTEGER) for n in names)


def val_formula(t, z: Var, avoid: Iterable[str] = ()) -> fol.Formula:
    """Formula stating that ``z`` is a value of ``t``.

    Bound integer variables are named I1, J1, K1, I2, ... skipping any name
    that occurs in ``t``, equals ``z`` or is listed in ``avoid``.
    """
    if z.name in _names_in(t):
        raise ValueError(f"variable {z.name} occurs in the term")
    fresh = _Fresh(_names_in(t) | {z.name} | set(avoid))
    return _val(t, z, fresh)


def _val(t, z, fresh: _Fresh) -> fol.Formula:
    if isinstance(t, (Numeral, Symbol, Inf, Sup, Variable)):
        return fol.eq(z, fo_term(t))
    i, j, k = fresh.triple()
    if isinstance(t, Abs):
        return Exists((i,), And((_val(t.arg, i, fresh), fol.eq(z, fol.absval(i)))))
    if not isinstance(t, BinOp):
        raise TypeError(f"not a term: {t!r}")
    vi = _val(t.left, i, fresh)
    vj = _val(t.right, j, fresh)
    if t.op in ("+", "-", "*"):
        return Exists((i, j), And((fol.eq(z, Arith(t.op, (i, j))), vi, vj)))
    if t.op == "..":
        return Exists(
            (i, j, k),
            And((fol.eq(z, k), Compare("<=", i, k), Compare("<=", k, j), vi, vj)),
        )
    f1 = quotient_bounds(i, j, k)
    f_last = signed_quotient(i, j, k, z) if t.op == "/" else signed_remainder(i, j, k, z)
    return Exists((i, j, k), And((vi, vj, *f1.items, f_last)))


ZERO = Numeral(0)
ONE = Numeral(1)


def quotient_bounds(i, j, k) -> And:
    """``K × |J| ≤ |I| < (K + 1) × |J|``: K is the floor of |I| / |J|."""
    return And((
        Compare("<=", fol.mul(k, fol.absval(j)), fol.absval(i)),
        Compare("<", fol.absval(i), fol.mul(fol.add(k, ONE), fol.absval(j))),
    ))


def _sign_split(i, j, z, nonneg, neg) -> Or:
    prod = fol.mul(i, j)
    return Or((
        And((Compare(">=", prod, ZERO), fol.eq(z, nonneg))),
        And((Compare("<", prod, ZERO), fol.eq(z, neg))),
    ))


def signed_quotient(i, j, k, z) -> Or:
    return _sign_split(i, j, z, k, fol.sub(ZERO, k))


def signed_remainder(i, j, k, z) -> Or:
    return _sign_split(i, j, z, fol.sub(i, fol.mul(k, j)), fol.add(i, fol.mul(k, j)))


def val_tuple(ts: Sequence, zs: Sequence[Var], avoid: Iterable[str] = ()) -> list[fol.Formula]:
    """Conjuncts ``val_t1(Z1), ..., val_tk(Zk)``."""
    avoid = set(avoid) | {z.name for z in zs}
    return [val_formula(t, z, avoid) for t, z in zip(ts, zs)]

