"""Batch command-line interface.

Subcommands::

    dualforget forget --mode {strong,weak} --vars p,q [options] THEORY_FILE
    dualforget snc --theory FILE --query FORMULA --keep a,b [options]
    dualforget wsc --theory FILE --query FORMULA --keep a,b [options]
    dualforget check-equiv A B [--domain-size N]

Exit codes: 0 success / equivalent; 1 parse error; 2 elimination failed
(reason on stderr, residual printed); 3 internal invariant breach or
verification failure; 4 counterexample found.  Formulas go to stdout,
diagnostics to stderr.  ``DF_TRACE=1`` is equivalent to ``--trace``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import fo, prop
from .errors import LogicError, ParseError
from .outcome import EliminationOutcome
from .parser import parse_formula, parse_theory
from .printer import format_formula
from .semantics import counterexample, equiv_prop
from .syntax import (
    Formula,
    Signature,
    Theory,
    conj,
    exists2,
    forall2,
    is_propositional,
    prop_symbols,
    rel_symbols,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_FAILED = 2
EXIT_INTERNAL = 3
EXIT_COUNTEREXAMPLE = 4

_FRAGMENT_RANK = {"prop": 0, "fo": 1, "fixpoint": 2}


def _symbols(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _load_theory(path: str) -> tuple[Signature, Theory]:
    content = Path(path).read_text(encoding="utf-8")
    return parse_theory(content, name=Path(path).stem)


def _emit(result: Formula, out_path: Optional[str]) -> None:
    text = format_formula(result)
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _print_trace(outcome: EliminationOutcome) -> None:
    for i, step in enumerate(outcome.trace, start=1):
        print(
            f"[{i:3}] {step.rule}: {format_formula(step.before)}  ==>  "
            f"{format_formula(step.after)}",
            file=sys.stderr,
        )


def _is_propositional_problem(th: Theory, extra: Sequence[Formula] = ()) -> bool:
    return is_propositional(th.as_formula) and all(is_propositional(f) for f in extra)


def _verify(outcome: EliminationOutcome, spec_formula: Formula, prop_problem: bool, domain: int) -> bool:
    if prop_problem:
        ok = equiv_prop(outcome.result, spec_formula)
    else:
        ok = counterexample(outcome.result, spec_formula, max_domain=domain) is None
    print(f"verify: {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    return ok


def _finish(outcome: EliminationOutcome, args, spec_formula: Formula, prop_problem: bool) -> int:
    if args.trace or os.environ.get("DF_TRACE") == "1":
        _print_trace(outcome)
    if not outcome.ok:
        print(f"elimination failed: {outcome.failure_reason}", file=sys.stderr)
        if outcome.residual is not None:
            _emit(outcome.residual, args.output)
        return EXIT_FAILED
    if _FRAGMENT_RANK[outcome.fragment] > _FRAGMENT_RANK[args.emit]:
        print(
            f"no {args.emit} equivalent found by this procedure "
            f"(result is in the {outcome.fragment} fragment)",
            file=sys.stderr,
        )
        return EXIT_FAILED
    if args.verify and not _verify(outcome, spec_formula, prop_problem, args.domain_size):
        return EXIT_INTERNAL
    _emit(outcome.result, args.output)
    return EXIT_OK


def _cmd_forget(args) -> int:
    sig, th = _load_theory(args.theory_file)
    forget = _symbols(args.vars)
    prop_problem = _is_propositional_problem(th)
    engine = prop if prop_problem else fo
    outcome = (engine.forget_strong if args.mode == "strong" else engine.forget_weak)(th, forget)
    quant = exists2 if args.mode == "strong" else forall2
    return _finish(outcome, args, quant(forget, th.as_formula), prop_problem)


def _cmd_snc_wsc(args, weakest: bool) -> int:
    if args.theory:
        sig, th = _load_theory(args.theory)
    else:
        sig, th = Signature(), Theory("theory", ())
    query = parse_formula(args.query, sig)
    keep = _symbols(args.keep) if args.keep else []
    forget_set = sorted(
        (prop_symbols(th.as_formula) | set(rel_symbols(th.as_formula))
         | prop_symbols(query) | set(rel_symbols(query))) - set(keep)
    )
    prop_problem = _is_propositional_problem(th, (query,))
    engine = prop if prop_problem else fo
    if weakest:
        outcome = engine.wsc(th, query, keep)
        from .syntax import Implies

        spec_formula = forall2(forget_set, Implies(th.as_formula, query))
    else:
        outcome = engine.snc(th, query, keep)
        spec_formula = exists2(forget_set, conj([th.as_formula, query]))
    return _finish(outcome, args, spec_formula, prop_problem)


def _parse_operand(text: str) -> Formula:
    path = Path(text)
    if path.exists():
        _, th = parse_theory(path.read_text(encoding="utf-8"), name=path.stem)
        return th.as_formula
    return parse_formula(text)


def _cmd_check_equiv(args) -> int:
    f = _parse_operand(args.left)
    g = _parse_operand(args.right)
    if is_propositional(f) and is_propositional(g):
        if equiv_prop(f, g):
            return EXIT_OK
        # reuse the finite-model search for a concrete differing valuation
        ce = counterexample(f, g, max_domain=1)
    else:
        ce = counterexample(f, g, max_domain=args.domain_size)
    if ce is None:
        return EXIT_OK
    print(f"counterexample: {ce.describe()}")
    return EXIT_COUNTEREXAMPLE


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--emit", choices=["prop", "fo", "fixpoint"], default="fixpoint",
                   help="largest acceptable output fragment (default: fixpoint)")
    p.add_argument("--trace", action="store_true", help="print transformation steps to stderr")
    p.add_argument("--verify", action="store_true",
                   help="check the result against the brute-force oracle")
    p.add_argument("--domain-size", type=int, default=2,
                   help="max domain size for first-order verification (default: 2)")
    p.add_argument("--output", "-o", help="write the result formula to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dualforget",
        description="Dual forgetting operators and strongest-necessary/weakest-sufficient "
        "conditions over propositional and first-order theories.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forget", help="forget symbols in a theory")
    p.add_argument("--mode", choices=["strong", "weak"], required=True)
    p.add_argument("--vars", required=True, help="comma-separated symbols to forget, in order")
    _add_common(p)
    p.add_argument("theory_file")
    p.set_defaults(func=_cmd_forget)

    for name, weakest in (("snc", False), ("wsc", True)):
        p = sub.add_parser(
            name,
            help=("weakest sufficient" if weakest else "strongest necessary")
            + " condition of a query",
        )
        p.add_argument("--theory", help="theory file (omit for the empty theory)")
        p.add_argument("--query", required=True, help="query formula")
        p.add_argument("--keep", default="", help="comma-separated vocabulary to keep")
        _add_common(p)
        p.set_defaults(func=lambda a, w=weakest: _cmd_snc_wsc(a, w))

    p = sub.add_parser("check-equiv", help="oracle equivalence of two formulas or theory files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--domain-size", type=int, default=2)
    p.set_defaults(func=_cmd_check_equiv)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LogicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
