"""Semantics workbench for logic programs with conditional literals and arithmetic.

Two translations of a program are provided: into two-sorted first-order
sentences (``taustar``) and, through rule instantiation, into infinitary
propositional formulas (``tau``).  Grounding the first, taking stable
models of either, and sweeping here-and-there interpretations lets the two
semantics be compared exhaustively over a bounded universe.
"""

from .config import Config
from .errors import AspsemError, ParseError, RefusalError, TruncationError
from .semantics import answer_sets, gringo_answer_sets, p_answer_sets, verify_equivalence
from .syntax import parse_program, parse_rule, parse_term

__all__ = [
    "AspsemError", "Config", "ParseError", "RefusalError", "TruncationError",
    "answer_sets", "gringo_answer_sets", "p_answer_sets", "parse_program",
    "parse_rule", "parse_term", "verify_equivalence",
]
