"""Command-line interface.

Exit codes: 0 success, 1 unreadable input, 2 syntax error, 3 refused
(an enumeration limit would be exceeded), 4 the two semantics disagree or
verification found a counterexample, 5 the external solver disagrees.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import fol, grounder
from . import infinitary as inf
from . import oracle, semantics
from .config import Config
from .errors import ParseError, RefusalError
from .syntax import dumps_program, parse_program, render_atom, render_program
from .taustar import tau_star_program

EXIT_OK, EXIT_IO, EXIT_PARSE, EXIT_REFUSED, EXIT_MISMATCH, EXIT_SOLVER = 0, 1, 2, 3, 4, 5
ANSWER_SETS_SCHEMA = "aspsem.answer-sets/1"
UNSAT = "UNSATISFIABLE"


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = Config()
    p.add_argument("file", nargs="?", default="-", help="program file, '-' or absent for stdin")
    p.add_argument("--int-bound", type=int, default=d.int_bound, help="numerals range over [-N, N]")
    p.add_argument("--base-limit", type=int, default=d.base_limit, help="max atoms in a here-and-there sweep")
    p.add_argument("--eq-limit", type=int, default=d.eq_limit, help="max atoms in a stable model search")
    p.add_argument("--instance-cap", type=int, default=d.instance_cap, help="max rule instances")
    p.add_argument("--interval-cap", type=int, default=d.interval_cap, help="max values of an interval")
    p.add_argument("--quantifier-cap", type=int, default=d.quantifier_cap, help="max quantifier expansion")
    p.add_argument("--format", choices=("text", "json"), default=d.format)
    p.add_argument("--solver", default=None, help="external solver command (default: $ASPSEM_SOLVER, clingo)")
    p.add_argument("--timeout", type=float, default=d.timeout, help="external solver timeout in seconds")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aspsem", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    sub.add_parser("parse", parents=[common], help="parse and pretty-print a program")
    t = sub.add_parser("translate", parents=[common], help="first-order translation")
    t.add_argument("--sm", action="store_true", help="also print the second-order SM formula")
    g = sub.add_parser("ground", parents=[common], help="grounded first-order translation")
    g.add_argument("--raw", action="store_true", help="skip simplification")
    sub.add_parser("tau", parents=[common], help="instantiation-based infinitary translation")
    s = sub.add_parser("solve", parents=[common], help="answer sets")
    s.add_argument("--route", choices=("smdef", "gringo", "both"), default="both")
    sub.add_parser("verify", parents=[common], help="check both translations agree")
    sub.add_parser("cross-check", parents=[common], help="compare with an external solver")
    return parser


def _config(args) -> Config:
    try:
        return Config(
            int_bound=args.int_bound, base_limit=args.base_limit, eq_limit=args.eq_limit,
            instance_cap=args.instance_cap, interval_cap=args.interval_cap,
            quantifier_cap=args.quantifier_cap, format=args.format, solver=args.solver,
            timeout=args.timeout,
        )
    except ValueError as err:
        raise _Fail(EXIT_IO, f"bad configuration: {err}")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise _Fail(EXIT_IO, f"cannot read {path}: {err}")


def _models_text(models) -> str:
    if not models:
        return UNSAT + "\n"
    return "".join(inf.render_model(m) + "\n" for m in models)


def _models_json(models, config: Config, route: str) -> str:
    return json.dumps({
        "schema": ANSWER_SETS_SCHEMA,
        "int_bound": config.int_bound,
        "route": route,
        "answer_sets": [[render_atom(a) for a in inf.sort_atoms(m)] for m in models],
    }, indent=2, sort_keys=True) + "\n"


def _bound_note(config: Config) -> None:
    print(f"% int bound {config.int_bound}", file=sys.stderr)


def _solve(program, config: Config, route: str):
    if route == "smdef":
        return semantics.answer_sets(program, config=config)
    if route == "gringo":
        return semantics.gringo_answer_sets(program, config=config)
    ours = semantics.answer_sets(program, config=config)
    theirs = semantics.gringo_answer_sets(program, config=config)
    diff = oracle.compare_model_sets(ours, theirs)
    if not diff.equal:
        raise _Fail(EXIT_MISMATCH, "answer sets differ between the two routes:\n" + diff.render())
    return ours


def run(args) -> int:
    config = _config(args)
    text = _read(args.file)
    program = parse_program(text)
    out = sys.stdout
    name = args.file if args.file != "-" else "<stdin>"

    if args.command == "parse":
        out.write(dumps_program(program) + "\n" if config.format == "json" else render_program(program))
    elif args.command == "translate":
        theory = tau_star_program(program)
        if config.format == "json":
            out.write(fol.dumps_theory(theory) + "\n")
        else:
            out.write(fol.render_theory(theory, "unicode"))
            if args.sm:
                preds = fol.build_signature(program).predicates
                out.write(fol.sm_render(theory, preds) + "\n")
    elif args.command == "ground":
        interp = fol.StandardInterpretation.for_program(program, config.int_bound)
        part = grounder.PredicatePartition.standard(fol.build_signature(program))
        diags: list[str] = []
        formulas = grounder.ground_theory(
            interp, part, tau_star_program(program), simplify=not args.raw,
            cap=config.quantifier_cap, diagnostics=diags,
        )
        _bound_note(config)
        for d in diags:
            print(f"% {d}", file=sys.stderr)
        out.write(inf.dumps(formulas) + "\n" if config.format == "json" else inf.render_set(formulas))
    elif args.command == "tau":
        formulas = semantics.instantiated_translation(program, config)
        _bound_note(config)
        out.write(inf.dumps(formulas) + "\n" if config.format == "json" else inf.render_set(formulas))
    elif args.command == "solve":
        _bound_note(config)
        models = _solve(program, config, args.route)
        out.write(_models_json(models, config, args.route) if config.format == "json" else _models_text(models))
    elif args.command == "verify":
        report = semantics.verify_equivalence(program, config=config, program_id=name)
        print(f"% {report.seconds:.3f}s", file=sys.stderr)
        out.write(report.dumps(timing=False) + "\n" if config.format == "json" else report.render())
        return {"equivalent": EXIT_OK, "counterexample": EXIT_MISMATCH}.get(report.verdict, EXIT_REFUSED)
    elif args.command == "cross-check":
        _bound_note(config)
        ours = _solve(program, config, "both")
        run_ = oracle.run_external(text, config.solver, config.timeout)
        if run_.status == "skipped":
            out.write("skipped: " + "; ".join(run_.diagnostics) + "\n")
            return EXIT_OK
        if not run_.ok:
            raise _Fail(EXIT_SOLVER, f"external solver {run_.status}: " + "; ".join(run_.diagnostics))
        diff = oracle.compare_model_sets(ours, run_.models)
        if not diff.equal:
            raise _Fail(EXIT_SOLVER, "external solver disagrees (< ours, > solver):\n" + diff.render())
        out.write(f"agree: {len(ours)} answer sets\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ParseError as err:
        print(f"{args.file}:{err}", file=sys.stderr)
        return EXIT_PARSE
    except RefusalError as err:
        print(f"refused: {err}", file=sys.stderr)
        return EXIT_REFUSED
    except _Fail as err:
        print(str(err), file=sys.stderr, end="" if str(err).endswith("\n") else "\n")
        return err.code


if __name__ == "__main__":
    sys.exit(main())
