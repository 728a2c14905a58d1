"""Brute-force propositional oracle: valuation evaluation, exhaustive
truth-table tautology and equivalence checks.

Independent of the elimination engines by design; only the syntax module is
imported.  Second-order quantifiers are evaluated by their defining
two-point expansion."""

from __future__ import annotations

from typing import Mapping

from ..errors import EvalError, GuardError
from ..syntax import (
    And,
    Bottom,
    Exists2,
    Forall2,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    PropVar,
    Top,
    is_propositional,
    prop_symbols,
)
from . import kernel
from ._program import CircuitBuilder

MAX_TT_VARS = 22

Valuation = Mapping[str, bool]


def eval_prop(f: Formula, valuation: Valuation) -> bool:
    """Evaluate a propositional formula under a valuation (total on its free
    propositional variables).  Second-order quantifiers are allowed."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, PropVar):
        try:
            return bool(valuation[f.name])
        except KeyError:
            raise EvalError(f"valuation does not map {f.name!r}") from None
    if isinstance(f, Not):
        return not eval_prop(f.body, valuation)
    if isinstance(f, And):
        return all(eval_prop(it, valuation) for it in f.items)
    if isinstance(f, Or):
        return any(eval_prop(it, valuation) for it in f.items)
    if isinstance(f, Implies):
        return (not eval_prop(f.antecedent, valuation)) or eval_prop(f.consequent, valuation)
    if isinstance(f, Iff):
        return eval_prop(f.left, valuation) == eval_prop(f.right, valuation)
    if isinstance(f, Exists2):
        over = dict(valuation)
        over[f.sym] = False
        if eval_prop(f.body, over):
            return True
        over[f.sym] = True
        return eval_prop(f.body, over)
    if isinstance(f, Forall2):
        over = dict(valuation)
        over[f.sym] = False
        if not eval_prop(f.body, over):
            return False
        over[f.sym] = True
        return eval_prop(f.body, over)
    raise EvalError(f"not a propositional formula: {type(f).__name__}")


def _compile(builder: CircuitBuilder, f: Formula, env: dict[str, int]) -> int:
    """Compile to a circuit slot; ``env`` maps every free propositional
    variable (and any quantified one in scope) to a slot."""
    if isinstance(f, Top):
        return builder.const(True)
    if isinstance(f, Bottom):
        return builder.const(False)
    if isinstance(f, PropVar):
        return env[f.name]
    if isinstance(f, Not):
        return builder.not_(_compile(builder, f.body, env))
    if isinstance(f, And):
        return builder.and_many(_compile(builder, it, env) for it in f.items)
    if isinstance(f, Or):
        return builder.or_many(_compile(builder, it, env) for it in f.items)
    if isinstance(f, Implies):
        return builder.or2(
            builder.not_(_compile(builder, f.antecedent, env)),
            _compile(builder, f.consequent, env),
        )
    if isinstance(f, Iff):
        a = _compile(builder, f.left, env)
        b = _compile(builder, f.right, env)
        return builder.or2(builder.and2(a, b), builder.and2(builder.not_(a), builder.not_(b)))
    if isinstance(f, (Exists2, Forall2)):
        lo = _compile(builder, f.body, {**env, f.sym: builder.const(False)})
        hi = _compile(builder, f.body, {**env, f.sym: builder.const(True)})
        return builder.or2(lo, hi) if isinstance(f, Exists2) else builder.and2(lo, hi)
    raise EvalError(f"not a propositional formula: {type(f).__name__}")


def truth_table(f: Formula, var_order: list[str]) -> int:
    """Truth table of ``f`` over the given variable order, as an integer
    (bit v = value where variable i is true iff ``(v >> i) & 1``)."""
    if len(var_order) > MAX_TT_VARS:
        raise GuardError(
            f"truth-table enumeration over {len(var_order)} variables exceeds "
            f"the {MAX_TT_VARS}-variable guard"
        )
    builder = CircuitBuilder(len(var_order))
    env = {name: i for i, name in enumerate(var_order)}
    out = _compile(builder, f, env)
    return kernel.eval_table(builder, out)


def _check_prop(*fs: Formula) -> list[str]:
    vocab: set[str] = set()
    for f in fs:
        if not is_propositional(f):
            raise EvalError("first-order construct in propositional oracle")
        vocab |= prop_symbols(f)
    return sorted(vocab)


def taut_prop(f: Formula) -> bool:
    """Exhaustive truth-table tautology check."""
    vocab = _check_prop(f)
    return truth_table(f, vocab) == (1 << (1 << len(vocab))) - 1


def equiv_prop(f: Formula, g: Formula) -> bool:
    """Exhaustive truth-table equivalence check over the combined vocabulary."""
    vocab = _check_prop(f, g)
    return truth_table(f, vocab) == truth_table(g, vocab)


def implies_prop(f: Formula, g: Formula) -> bool:
    """Exhaustive check of the entailment ``|= f -> g``."""
    vocab = _check_prop(f, g)
    tf = truth_table(f, vocab)
    tg = truth_table(g, vocab)
    return tf & ~tg == 0
