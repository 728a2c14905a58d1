"""First-order and fixpoint second-order quantifier elimination.

Per eliminated relation the strategy escalates, cheapest first:

1. clause rule (weak forgetting only): a universally quantified disjunction
   of literals collapses to equality disjunctions, at most quadratic output;
2. the first-order Ackermann rewrite: conjuncts are split into definitional
   parts ``all u. (r(u) -> A(u))`` / ``all u. (A(u) -> r(u))`` with ``A``
   free of ``r`` and a residual of uniform opposite polarity, then the
   residual is instantiated with ``A``;
3. its fixpoint generalization when ``A`` mentions ``r`` positively, which
   yields least/greatest fixpoint literals;
4. a reported failure (reason plus partial-progress residual).

Definitional parts are recognized in two shapes: a clause whose head literal
applies ``r`` to distinct clause-bound variables, and a bare literal conjunct
isolated with equality guards (``~r(x,y)`` becomes
``all u. all w. (r(u,w) -> u != x | w != y)``).  A tautological definition is
injected when the whole formula already has uniform polarity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InternalError
from .outcome import EliminationOutcome, TraceStep, failure, success
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Equal,
    ExistsInd,
    Exists2,
    ForallInd,
    Forall2,
    Formula,
    Gfp,
    Iff,
    Implies,
    Lfp,
    Not,
    Or,
    Polarity,
    Term,
    Theory,
    Var,
    all_names,
    conj,
    conjuncts,
    disj,
    disjuncts,
    exists,
    forall,
    forall2,
    polarity,
    prop_symbols,
    rel_symbols,
)
from .transform import NameGen, nnf, simplify, substitute_prop, substitute_rel
from .prop import _DIST_LIMIT


# ---------------------------------------------------------------------------
# Normalization: NNF, quantifier distribution, bounded or-over-and


def _distribute(f: Formula) -> Formula:
    if isinstance(f, And):
        return conj([_distribute(it) for it in f.items])
    if isinstance(f, ForallInd):
        body = _distribute(f.body)
        if isinstance(body, And):
            return conj([_distribute(ForallInd(f.var, c)) for c in body.items])
        return ForallInd(f.var, body)
    if isinstance(f, Or):
        items = [_distribute(it) for it in f.items]
        branches = [conjuncts(it) for it in items]
        total = 1
        for b in branches:
            total *= len(b)
            if total > _DIST_LIMIT:
                return disj(items)
        if total == 1:
            return disj(items)
        return _distribute(conj([disj(list(combo)) for combo in itertools.product(*branches)]))
    if isinstance(f, ExistsInd):
        return ExistsInd(f.var, _distribute(f.body))
    return f


def normalize(f: Formula) -> Formula:
    """NNF, universal quantifiers distributed over conjunctions, bounded
    or-over-and distribution to expose clause structure."""
    return _distribute(nnf(f))


def _strip_forall(f: Formula) -> tuple[list[str], Formula]:
    vars: list[str] = []
    while isinstance(f, ForallInd):
        vars.append(f.var)
        f = f.body
    return vars, f


def _strip_exists(f: Formula) -> tuple[list[str], Formula]:
    vars: list[str] = []
    while isinstance(f, ExistsInd):
        vars.append(f.var)
        f = f.body
    return vars, f


def _tuple_eq(left: Sequence[Term], right: Sequence[Term]) -> Formula:
    """Componentwise tuple equality (conjunction of component equalities)."""
    return conj([Equal(a, b) for a, b in zip(left, right)])


def _tuple_neq(left: Sequence[Term], right: Sequence[Term]) -> Formula:
    """Componentwise tuple inequality (disjunction of component inequalities)."""
    return disj([Not(Equal(a, b)) for a, b in zip(left, right)])


def _occurs_outside_fixpoints(f: Formula, r: str) -> bool:
    if isinstance(f, Atom):
        return f.rel == r
    if isinstance(f, (Lfp, Gfp)):
        return False
    if isinstance(f, Not):
        return _occurs_outside_fixpoints(f.body, r)
    if isinstance(f, (And, Or)):
        return any(_occurs_outside_fixpoints(it, r) for it in f.items)
    if isinstance(f, Implies):
        return _occurs_outside_fixpoints(f.antecedent, r) or _occurs_outside_fixpoints(
            f.consequent, r
        )
    if isinstance(f, Iff):
        return _occurs_outside_fixpoints(f.left, r) or _occurs_outside_fixpoints(f.right, r)
    if isinstance(f, (ForallInd, ExistsInd)):
        return _occurs_outside_fixpoints(f.body, r)
    if isinstance(f, (Forall2, Exists2)):
        return f.sym != r and _occurs_outside_fixpoints(f.body, r)
    return False


# ---------------------------------------------------------------------------
# Definitional extraction


@dataclass
class _Extraction:
    a: Formula               # the defining formula over ``params``
    params: tuple[str, ...]  # canonical argument variables of the definition
    residual: list[Formula]
    positive_case: bool      # True: defs are (r -> A), residual positive
    artificial: bool         # no real definitional conjunct; A is T / F
    needs_fixpoint: bool     # A mentions r (positively)


def _head_literal(d: Formula, r: str, positive: bool) -> Optional[tuple[Term, ...]]:
    """Argument tuple when ``d`` is the r-literal of the requested sign."""
    if positive and isinstance(d, Atom) and d.rel == r:
        return d.args
    if not positive and isinstance(d, Not) and isinstance(d.body, Atom) and d.body.rel == r:
        return d.body.args
    return None


def _def_from_clause(
    c: Formula, r: str, positive_case: bool, params: tuple[str, ...], ng: NameGen
) -> Optional[Formula]:
    """Defining formula ``A`` over ``params`` extracted from one conjunct, or
    ``None`` when the conjunct has no definitional shape.

    ``positive_case`` extracts from clauses with a negative head ``~r(t)``
    (definition ``r -> A``); the negative case from a positive head."""
    bvars, body = _strip_forall(c)
    ds = list(disjuncts(body))
    from .transform import subst_terms

    for i, d in enumerate(ds):
        args = _head_literal(d, r, positive=not positive_case)
        if args is None:
            continue
        rest = disj(ds[:i] + ds[i + 1:])
        distinct_bound_vars = (
            all(isinstance(t, Var) and t.name in bvars for t in args)
            and len({t.name for t in args if isinstance(t, Var)}) == len(args)
        )
        if distinct_bound_vars:
            outer = [v for v in bvars if v not in {t.name for t in args}]
            if positive_case:
                a = forall(outer, rest)
            else:
                a = exists(outer, nnf(Not(rest)))
            renaming = {t.name: Var(p) for t, p in zip(args, params)}
            return subst_terms(a, renaming, ng)
        if len(ds) == 1:
            # bare literal: isolate with equality guards
            pvars = tuple(Var(p) for p in params)
            if positive_case:
                return forall(bvars, _tuple_neq(pvars, args))
            return exists(bvars, _tuple_eq(pvars, args))
        return None
    return None


def _extract(
    r: str,
    items: Sequence[Formula],
    positive_case: bool,
    allow_r_in_def: bool,
    ng: NameGen,
    arity: int,
) -> Optional[_Extraction]:
    resid_ok = Polarity.POSITIVE if positive_case else Polarity.NEGATIVE
    a_ok = (Polarity.POSITIVE, Polarity.ABSENT) if allow_r_in_def else (Polarity.ABSENT,)
    params = tuple(ng.fresh("u") for _ in range(arity))
    defs: list[Formula] = []
    residual: list[Formula] = []
    for c in items:
        pol = polarity(c, r)
        if pol in (Polarity.ABSENT, resid_ok):
            residual.append(c)
            continue
        a = _def_from_clause(c, r, positive_case, params, ng)
        if a is None or polarity(a, r) not in a_ok:
            return None
        defs.append(a)
    if defs:
        a = conj(defs) if positive_case else disj(defs)
    else:
        a = TOP if positive_case else BOT
    return _Extraction(
        a,
        params,
        residual,
        positive_case,
        artificial=not defs,
        needs_fixpoint=polarity(a, r) is not Polarity.ABSENT,
    )


def _extract_single_def_params(
    r: str, items: Sequence[Formula], positive_case: bool, arity: int
) -> Optional[tuple[str, ...]]:
    """When exactly one conjunct is definitional and its head applies ``r``
    to distinct bound variables, reuse those variable names as the canonical
    parameters (matches the hand-derived shapes; purely cosmetic)."""
    resid_ok = Polarity.POSITIVE if positive_case else Polarity.NEGATIVE
    cands = [c for c in items if polarity(c, r) not in (Polarity.ABSENT, resid_ok)]
    if len(cands) != 1:
        return None
    bvars, body = _strip_forall(cands[0])
    for d in disjuncts(body):
        args = _head_literal(d, r, positive=not positive_case)
        if args is None:
            continue
        names = [t.name for t in args if isinstance(t, Var)]
        if len(names) == len(args) == len(set(names)) and all(n in bvars for n in names):
            return tuple(names)
    return None


def _attempt(
    r: str,
    items: Sequence[Formula],
    positive_case: bool,
    allow_r_in_def: bool,
    avoid: set[str],
    arity: int,
) -> Optional[_Extraction]:
    nice = _extract_single_def_params(r, items, positive_case, arity)
    if nice:
        ng: NameGen = _FixedNames(nice, set(avoid))
    else:
        ng = NameGen(set(avoid))
    return _extract(r, items, positive_case, allow_r_in_def, ng, arity)


class _FixedNames(NameGen):
    """Name generator that hands out a fixed parameter tuple first."""

    def __init__(self, fixed: Sequence[str], avoid: set[str]):
        super().__init__(avoid - set(fixed))
        self._fixed = list(fixed)

    def fresh(self, base: str) -> str:
        if self._fixed:
            name = self._fixed.pop(0)
            self.reserve([name])
            return name
        return super().fresh(base)


def _select_extraction(
    r: str, items: Sequence[Formula], avoid: set[str], arity: int, allow_fixpoint: bool
) -> Optional[_Extraction]:
    """Try the negative then the positive Ackermann shape with r-free
    definitions, then a tautological definition, then (optionally) the
    fixpoint shapes."""
    fallback: list[_Extraction] = []
    for positive_case in (False, True):
        ext = _attempt(r, items, positive_case, False, avoid, arity)
        if ext is not None and not ext.artificial:
            return ext
        if ext is not None:
            fallback.append(ext)
    if fallback:
        return fallback[0]
    if allow_fixpoint:
        for positive_case in (False, True):
            ext = _attempt(r, items, positive_case, True, avoid, arity)
            if ext is not None:
                return ext
    return None


# ---------------------------------------------------------------------------
# Public single-symbol operations


def to_ackermann_form(r: str, f: Formula) -> Optional[tuple[Formula, Formula, str]]:
    """Best-effort rewrite of ``f`` (NNF) into definitional-plus-residual
    Ackermann shape for ``r``; ``(definitional, residual, case)`` with case
    ``"Pos"`` for ``all u.(r(u) -> A)`` with a positive residual, ``"Neg"``
    for ``all u.(A -> r(u))`` with a negative one.  ``None`` when mixed
    occurrences cannot be separated with an r-free definition."""
    arity = rel_symbols(f).get(r)
    if arity is None:
        return None
    items = conjuncts(normalize(f))
    ext = _select_extraction(r, items, all_names(f), arity, allow_fixpoint=False)
    if ext is None or ext.needs_fixpoint:
        return None
    pvars = tuple(Var(p) for p in ext.params)
    head = Atom(r, pvars)
    impl = Implies(head, ext.a) if ext.positive_case else Implies(ext.a, head)
    definitional = forall(list(ext.params), impl)
    return definitional, conj(ext.residual), "Pos" if ext.positive_case else "Neg"


def apply_ackermann(r: str, definitional: Formula, residual: Formula, case: str) -> Formula:
    """Instantiate the residual with the definition: ``B(r(u) = A(u))``,
    simplified.  Defensive checks reject definitions that mention ``r``."""
    params_names, impl = _strip_forall(definitional)
    if not isinstance(impl, Implies):
        raise InternalError("definitional part must be a guarded implication")
    head, a = (impl.antecedent, impl.consequent) if case == "Pos" else (impl.consequent, impl.antecedent)
    if not (isinstance(head, Atom) and head.rel == r):
        raise InternalError(f"definitional head must be an {r} atom")
    params = [t.name for t in head.args if isinstance(t, Var)]
    if len(params) != len(head.args) or len(set(params)) != len(params):
        raise InternalError("definitional head needs distinct variable arguments")
    if polarity(a, r) is not Polarity.ABSENT:
        raise InternalError(f"defining formula still mentions {r}")
    return simplify(substitute_rel(residual, r, params, a))


def fixpoint_eliminate(r: str, f: Formula) -> EliminationOutcome:
    """Eliminate ``Ex2 r`` from ``f`` allowing the definition to mention
    ``r`` positively; produces a least fixpoint for ``all u.(A(r) -> r(u))``
    with a negative residual, a greatest fixpoint for the dual."""
    arity = rel_symbols(f).get(r)
    if arity is None:
        return success(simplify(f), [])
    items = conjuncts(normalize(f))
    ext = _select_extraction(r, items, all_names(f), arity, allow_fixpoint=True)
    if ext is None:
        return failure(
            f"mixed-polarity occurrences of {r} not separable", [], residual=f
        )
    if polarity(ext.a, r) not in (Polarity.POSITIVE, Polarity.ABSENT):
        return failure(
            f"defining formula for {r} is not positive in {r}", [], residual=f
        )
    residual = conj(ext.residual)
    if not ext.needs_fixpoint:
        return success(simplify(substitute_rel(residual, r, ext.params, ext.a)), [])
    fix_cls = Lfp if not ext.positive_case else Gfp
    literal = fix_cls(r, ext.params, ext.a, tuple(Var(p) for p in ext.params))
    return success(simplify(substitute_rel(residual, r, ext.params, literal)), [])


def clause_form_eliminate(r: str, f: Formula) -> Optional[Formula]:
    """Eliminate ``All2 r`` from a universally quantified disjunction whose
    ``r``-part consists of literals: ``all x.(r(t1)|..|~r(s1)|..|rest)``
    becomes the equality disjunction ``all x.(s1=t1 | .. | rest)`` (one
    equality per negative/positive pair, tuples componentwise), at most
    quadratic in the input.  ``None`` when the conjunct has another shape."""
    bvars, body = _strip_forall(f)
    pos: list[tuple[Term, ...]] = []
    neg: list[tuple[Term, ...]] = []
    rest: list[Formula] = []
    for d in disjuncts(body):
        args = _head_literal(d, r, positive=True)
        if args is not None:
            pos.append(args)
            continue
        args = _head_literal(d, r, positive=False)
        if args is not None:
            neg.append(args)
            continue
        if polarity(d, r) is not Polarity.ABSENT:
            return None
        rest.append(d)
    if not pos and not neg:
        return None
    eqs = [_tuple_eq(n, p) for n in neg for p in pos]
    return forall(bvars, disj(eqs + rest))


# ---------------------------------------------------------------------------
# Drivers


def _eliminate_exists_rel(
    r: str, f: Formula, steps: list[TraceStep]
) -> tuple[Optional[Formula], Optional[str]]:
    """Eliminate ``Ex2 r`` from ``f``; returns (result, None) or
    (None, reason)."""
    if r in prop_symbols(f):
        raw = disj([substitute_prop(f, r, BOT), substitute_prop(f, r, TOP)])
        steps.append(TraceStep("ShannonExists", Exists2(r, f), raw))
        return simplify(raw), None
    if r not in rel_symbols(f):
        return f, None
    if not _occurs_outside_fixpoints(f, r):
        return None, f"{r} occurs only inside fixpoint literals; elimination not attempted"
    g = normalize(f)
    if g != f:
        steps.append(TraceStep("NNF", f, g))
    items = conjuncts(g)
    arity = rel_symbols(f)[r]
    ext = _select_extraction(r, items, all_names(f), arity, allow_fixpoint=True)
    if ext is None:
        return None, f"mixed-polarity occurrences of {r} not separable"
    residual = conj(ext.residual)
    rule = "AckermannPos" if ext.positive_case else "AckermannNeg"
    if ext.artificial:
        taut = forall(
            list(ext.params),
            Implies(Atom(r, tuple(Var(p) for p in ext.params)), TOP)
            if ext.positive_case
            else Implies(BOT, Atom(r, tuple(Var(p) for p in ext.params))),
        )
        steps.append(TraceStep("ArtificialConjunct", Exists2(r, g), Exists2(r, conj([taut, g]))))
    if ext.needs_fixpoint:
        fix_cls = Gfp if ext.positive_case else Lfp
        e: Formula = fix_cls(r, ext.params, ext.a, tuple(Var(p) for p in ext.params))
    else:
        e = ext.a
    raw = substitute_rel(residual, r, ext.params, e)
    steps.append(TraceStep(rule, Exists2(r, g), raw))
    out = simplify(raw)
    if out != raw:
        steps.append(TraceStep("Simplify", raw, out))
    return out, None


def forget_strong(th: Theory, forget: Sequence[str]) -> EliminationOutcome:
    """First-order strong forgetting: eliminate ``Ex2 r`` per symbol in
    order (Ackermann, then fixpoint); a failure on one symbol reports the
    partial progress over the previous ones."""
    steps: list[TraceStep] = []
    f = simplify(th.as_formula)
    for r in forget:
        out, reason = _eliminate_exists_rel(r, f, steps)
        if out is None:
            return failure(f"{reason}", steps, residual=f)
        f = out
    return success(f, steps)


def forget_weak(th: Theory, forget: Sequence[str]) -> EliminationOutcome:
    """First-order weak forgetting: distribute ``All2 r`` over conjuncts and
    eliminate per conjunct (clause rule, then the Ackermann rewrite on the
    negated existential form, then its fixpoint generalization)."""
    steps: list[TraceStep] = []
    whole = th.as_formula
    present = [s for s in forget if s in prop_symbols(whole) or s in rel_symbols(whole)]
    if not present:
        return success(simplify(whole), steps)
    items: list[Formula] = []
    for formula in th.formulas:
        items.extend(conjuncts(normalize(simplify(formula))))
    if len(items) > 1:
        steps.append(
            TraceStep(
                "DistributeForall",
                forall2(present, conj(items)),
                conj([forall2(present, c) for c in items]),
            )
        )
    results: list[Formula] = []
    for idx, c in enumerate(items):
        cur: Formula = c
        for r in forget:
            out, reason = _eliminate_forall_conjunct(r, cur, steps)
            if out is None:
                return failure(
                    f"conjunct {idx + 1} ({cur!r}): {reason}",
                    steps,
                    residual=conj(items),
                )
            cur = out
        results.append(cur)
    raw = conj(results)
    out = simplify(raw)
    if out != raw:
        steps.append(TraceStep("Simplify", raw, out))
    return success(out, steps)


def _eliminate_forall_conjunct(
    r: str, c: Formula, steps: list[TraceStep]
) -> tuple[Optional[Formula], Optional[str]]:
    if r in prop_symbols(c):
        raw = conj([substitute_prop(c, r, BOT), substitute_prop(c, r, TOP)])
        steps.append(TraceStep("ShannonForall", Forall2(r, c), raw))
        return simplify(raw), None
    if r not in rel_symbols(c):
        return c, None
    if not _occurs_outside_fixpoints(c, r):
        return None, f"{r} occurs only inside fixpoint literals; elimination not attempted"
    fast = clause_form_eliminate(r, c)
    if fast is not None:
        steps.append(TraceStep("ClauseRule", Forall2(r, c), fast))
        return simplify(fast), None
    # All2 r C == ~ Ex2 r ~C; strip the leading existential prefix so the
    # definitional shapes can be recognized under it
    negated = normalize(Not(c))
    prefix, matrix = _strip_exists(negated)
    inner_steps: list[TraceStep] = []
    out, reason = _eliminate_exists_rel(r, matrix, inner_steps)
    if out is None:
        return None, reason
    rule = next(
        (s.rule for s in inner_steps if s.rule.startswith(("Ackermann", "Shannon"))),
        "Simplify",
    )
    result = simplify(nnf(Not(exists(prefix, out))))
    steps.append(TraceStep(rule, Forall2(r, c), result))
    return result, None


def snc(th: Theory, query: Formula, keep: Sequence[str]) -> EliminationOutcome:
    """First-order strongest necessary condition: strong forgetting of the
    complementary vocabulary in ``th & query``."""
    forget = _partition(th, query, keep)
    return forget_strong(Theory(th.name, th.formulas + (query,)), forget)


def wsc(th: Theory, query: Formula, keep: Sequence[str]) -> EliminationOutcome:
    """First-order weakest sufficient condition: weak forgetting of the
    complementary vocabulary in ``th -> query``."""
    forget = _partition(th, query, keep)
    body = Implies(th.as_formula, query) if th.formulas else query
    return forget_weak(Theory(th.name, (body,)), forget)


def _partition(th: Theory, query: Formula, keep: Sequence[str]) -> list[str]:
    vocab = prop_symbols(th.as_formula) | set(rel_symbols(th.as_formula))
    vocab |= prop_symbols(query) | set(rel_symbols(query))
    return [s for s in sorted(vocab) if s not in set(keep)]
