"""Rewriting primitives: fresh names, substitution, NNF, and the simplifier."""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from .errors import ArityError, CaptureError, InternalError
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Bottom,
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
    PropVar,
    Term,
    Top,
    Var,
    all_names,
    conj,
    disj,
    free_ind_vars,
    prop_symbols,
    rel_symbols,
)


class NameGen:
    """Deterministic fresh-name supply: ``x, x_1, x_2, ...`` skipping an
    avoid set.  Confine one instance to a single elimination request."""

    def __init__(self, avoid: Iterable[str] = ()):
        self._avoid = set(avoid)

    def reserve(self, names: Iterable[str]) -> None:
        self._avoid.update(names)

    def fresh(self, base: str) -> str:
        if base not in self._avoid:
            self._avoid.add(base)
            return base
        i = 1
        while f"{base}_{i}" in self._avoid:
            i += 1
        name = f"{base}_{i}"
        self._avoid.add(name)
        return name


# ---------------------------------------------------------------------------
# Term-level substitution (capture-avoiding)


def _term_sub(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var) and t.name in mapping:
        return mapping[t.name]
    return t


def _term_vars(ts: Iterable[Term]) -> set[str]:
    return {t.name for t in ts if isinstance(t, Var)}


def subst_terms(f: Formula, mapping: Mapping[str, Term], ng: Optional[NameGen] = None) -> Formula:
    """Simultaneously replace free individual variables by terms, renaming
    bound variables where they would capture an inserted variable."""
    if not mapping:
        return f
    if ng is None:
        ng = NameGen(all_names(f) | {t.name for t in mapping.values()} | set(mapping))

    def walk(g: Formula, m: Mapping[str, Term]) -> Formula:
        if isinstance(g, (Top, Bottom, PropVar)):
            return g
        if isinstance(g, Atom):
            return Atom(g.rel, tuple(_term_sub(t, m) for t in g.args))
        if isinstance(g, Equal):
            return Equal(_term_sub(g.left, m), _term_sub(g.right, m))
        if isinstance(g, Not):
            return Not(walk(g.body, m))
        if isinstance(g, And):
            return And(tuple(walk(it, m) for it in g.items))
        if isinstance(g, Or):
            return Or(tuple(walk(it, m) for it in g.items))
        if isinstance(g, Implies):
            return Implies(walk(g.antecedent, m), walk(g.consequent, m))
        if isinstance(g, Iff):
            return Iff(walk(g.left, m), walk(g.right, m))
        if isinstance(g, (ForallInd, ExistsInd)):
            m2 = {k: v for k, v in m.items() if k != g.var}
            if not m2:
                return g
            var = g.var
            body = g.body
            if var in _term_vars(m2.values()):
                var = ng.fresh(g.var)
                body = subst_terms(body, {g.var: Var(var)}, ng)
            return type(g)(var, walk(body, m2))
        if isinstance(g, (Forall2, Exists2)):
            return type(g)(g.sym, walk(g.body, m))
        if isinstance(g, (Lfp, Gfp)):
            applied = tuple(_term_sub(t, m) for t in g.applied)
            m2 = {k: v for k, v in m.items() if k not in g.argvars}
            body = g.body
            argvars = g.argvars
            clash = set(argvars) & _term_vars(m2.values())
            if m2 and clash:
                renaming = {v: Var(ng.fresh(v)) for v in clash}
                argvars = tuple(renaming.get(v, Var(v)).name for v in argvars)
                body = subst_terms(body, renaming, ng)
            return type(g)(g.rel, argvars, walk(body, m2) if m2 else body, applied)
        raise InternalError(f"unhandled formula in subst_terms: {type(g).__name__}")

    return walk(f, dict(mapping))


# ---------------------------------------------------------------------------
# Renaming of bound symbols (used for capture avoidance before substitution)


def _rename_symbol(f: Formula, old: str, new: str) -> Formula:
    """Rename free occurrences of a propositional/relation symbol."""

    def walk(g: Formula) -> Formula:
        if isinstance(g, PropVar):
            return PropVar(new) if g.name == old else g
        if isinstance(g, Atom):
            return Atom(new, g.args) if g.rel == old else g
        if isinstance(g, (Top, Bottom, Equal)):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, And):
            return And(tuple(walk(it) for it in g.items))
        if isinstance(g, Or):
            return Or(tuple(walk(it) for it in g.items))
        if isinstance(g, Implies):
            return Implies(walk(g.antecedent), walk(g.consequent))
        if isinstance(g, Iff):
            return Iff(walk(g.left), walk(g.right))
        if isinstance(g, (ForallInd, ExistsInd)):
            return type(g)(g.var, walk(g.body))
        if isinstance(g, (Forall2, Exists2)):
            if g.sym == old:
                return g
            return type(g)(g.sym, walk(g.body))
        if isinstance(g, (Lfp, Gfp)):
            if g.rel == old:
                return g
            return type(g)(g.rel, g.argvars, walk(g.body), g.applied)
        raise InternalError(f"unhandled formula in _rename_symbol: {type(g).__name__}")

    return walk(f)


def _freshen_binders(f: Formula, clash_vars: set[str], clash_syms: set[str], ng: NameGen) -> Formula:
    """Rename binders in ``f`` whose bound name collides with a free name of
    the formula being substituted in."""

    def walk(g: Formula) -> Formula:
        if isinstance(g, (Top, Bottom, PropVar, Atom, Equal)):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, And):
            return And(tuple(walk(it) for it in g.items))
        if isinstance(g, Or):
            return Or(tuple(walk(it) for it in g.items))
        if isinstance(g, Implies):
            return Implies(walk(g.antecedent), walk(g.consequent))
        if isinstance(g, Iff):
            return Iff(walk(g.left), walk(g.right))
        if isinstance(g, (ForallInd, ExistsInd)):
            body = g.body
            var = g.var
            if var in clash_vars:
                var = ng.fresh(g.var)
                body = subst_terms(body, {g.var: Var(var)}, ng)
            return type(g)(var, walk(body))
        if isinstance(g, (Forall2, Exists2)):
            body = g.body
            sym = g.sym
            if sym in clash_syms:
                sym = ng.fresh(g.sym)
                body = _rename_symbol(body, g.sym, sym)
            return type(g)(sym, walk(body))
        if isinstance(g, (Lfp, Gfp)):
            body = g.body
            rel = g.rel
            argvars = g.argvars
            if rel in clash_syms:
                rel = ng.fresh(g.rel)
                body = _rename_symbol(body, g.rel, rel)
            renaming = {v: Var(ng.fresh(v)) for v in argvars if v in clash_vars}
            if renaming:
                argvars = tuple(renaming[v].name if v in renaming else v for v in argvars)
                body = subst_terms(body, renaming, ng)
            return type(g)(rel, argvars, walk(body), g.applied)
        raise InternalError(f"unhandled formula in _freshen_binders: {type(g).__name__}")

    return walk(f)


# ---------------------------------------------------------------------------
# Propositional and relational substitution


def substitute_prop(f: Formula, p: str, e: Formula) -> Formula:
    """Replace every occurrence of propositional variable ``p`` by ``e``.

    Raises :class:`CaptureError` when ``p`` is itself bound by a second-order
    quantifier (or fixpoint) inside ``f``.  Binders in ``f`` that would
    capture a free name of ``e`` are renamed first."""
    for g in _binders_of(f):
        if g == p:
            raise CaptureError(f"{p} is rebound inside the substitution target")
    clash_syms = prop_symbols(e) | set(rel_symbols(e))
    clash_vars = free_ind_vars(e)
    if clash_syms or clash_vars:
        ng = NameGen(all_names(f) | all_names(e))
        f = _freshen_binders(f, clash_vars, clash_syms, ng)

    def walk(g: Formula) -> Formula:
        if isinstance(g, PropVar):
            return e if g.name == p else g
        if isinstance(g, (Top, Bottom, Atom, Equal)):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, And):
            return conj([walk(it) for it in g.items])
        if isinstance(g, Or):
            return disj([walk(it) for it in g.items])
        if isinstance(g, Implies):
            return Implies(walk(g.antecedent), walk(g.consequent))
        if isinstance(g, Iff):
            return Iff(walk(g.left), walk(g.right))
        if isinstance(g, (ForallInd, ExistsInd, Forall2, Exists2)):
            return type(g)(g.var if isinstance(g, (ForallInd, ExistsInd)) else g.sym, walk(g.body))
        if isinstance(g, (Lfp, Gfp)):
            return type(g)(g.rel, g.argvars, walk(g.body), g.applied)
        raise InternalError(f"unhandled formula in substitute_prop: {type(g).__name__}")

    return walk(f)


def _binders_of(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Forall2, Exists2)):
            yield g.sym
            stack.append(g.body)
        elif isinstance(g, (Lfp, Gfp)):
            yield g.rel
            stack.append(g.body)
        elif isinstance(g, Not):
            stack.append(g.body)
        elif isinstance(g, (And, Or)):
            stack.extend(g.items)
        elif isinstance(g, Implies):
            stack.extend((g.antecedent, g.consequent))
        elif isinstance(g, Iff):
            stack.extend((g.left, g.right))
        elif isinstance(g, (ForallInd, ExistsInd)):
            stack.append(g.body)


def substitute_rel(f: Formula, r: str, params: Sequence[str], e: Formula) -> Formula:
    """Replace every atom ``r(args)`` by ``e`` with ``params`` simultaneously
    instantiated to ``args`` (per-occurrence instantiation).

    ``params`` must be pairwise distinct.  Fully capture-avoiding in both
    directions: binders inside ``e`` are renamed when they would capture a
    variable of the occurrence's arguments, and binders in ``f`` are renamed
    when they would capture a name ``e`` uses freely beyond ``params`` (the
    definition may be guarded by variables of an enclosing prefix)."""
    params = tuple(params)
    if len(set(params)) != len(params):
        raise CaptureError(f"parameter variables must be distinct: {params}")
    ng = NameGen(all_names(f) | all_names(e) | set(params))
    clash_vars = free_ind_vars(e) - set(params)
    clash_syms = (prop_symbols(e) | set(rel_symbols(e))) - {r}
    if clash_vars or clash_syms:
        f = _freshen_binders(f, clash_vars, clash_syms, ng)

    def inst(args: tuple[Term, ...]) -> Formula:
        if len(args) != len(params):
            raise ArityError(
                f"{r} used with {len(args)} arguments, substitution expects {len(params)}"
            )
        body = e
        arg_vars = _term_vars(args)
        bound_in_e = {b for b in _ind_binders_of(e)}
        if arg_vars & bound_in_e:
            body = _freshen_binders(body, arg_vars & bound_in_e, set(), ng)
        return subst_terms(body, dict(zip(params, args)), ng)

    def walk(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return inst(g.args) if g.rel == r else g
        if isinstance(g, (Top, Bottom, PropVar, Equal)):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, And):
            return conj([walk(it) for it in g.items])
        if isinstance(g, Or):
            return disj([walk(it) for it in g.items])
        if isinstance(g, Implies):
            return Implies(walk(g.antecedent), walk(g.consequent))
        if isinstance(g, Iff):
            return Iff(walk(g.left), walk(g.right))
        if isinstance(g, (ForallInd, ExistsInd)):
            return type(g)(g.var, walk(g.body))
        if isinstance(g, (Forall2, Exists2)):
            if g.sym == r:
                return g
            return type(g)(g.sym, walk(g.body))
        if isinstance(g, (Lfp, Gfp)):
            if g.rel == r:
                return g
            return type(g)(g.rel, g.argvars, walk(g.body), g.applied)
        raise InternalError(f"unhandled formula in substitute_rel: {type(g).__name__}")

    return walk(f)


def _ind_binders_of(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (ForallInd, ExistsInd)):
            yield g.var
            stack.append(g.body)
        elif isinstance(g, (Lfp, Gfp)):
            yield from g.argvars
            stack.append(g.body)
        elif isinstance(g, Not):
            stack.append(g.body)
        elif isinstance(g, (And, Or)):
            stack.extend(g.items)
        elif isinstance(g, Implies):
            stack.extend((g.antecedent, g.consequent))
        elif isinstance(g, Iff):
            stack.extend((g.left, g.right))
        elif isinstance(g, (Forall2, Exists2)):
            stack.append(g.body)


# ---------------------------------------------------------------------------
# Negation normal form


def nnf(f: Formula) -> Formula:
    """Negation normal form: ``->``/``<->`` expanded, negation pushed to
    literals, double negations removed, quantifiers dualized.

    Applied fixpoint literals are treated as atomic (they are outputs of
    elimination, not rewritten)."""
    return _nnf(f, False)


def _nnf(f: Formula, neg: bool) -> Formula:
    if isinstance(f, Top):
        return BOT if neg else TOP
    if isinstance(f, Bottom):
        return TOP if neg else BOT
    if isinstance(f, (PropVar, Atom, Equal, Lfp, Gfp)):
        return Not(f) if neg else f
    if isinstance(f, Not):
        return _nnf(f.body, not neg)
    if isinstance(f, And):
        items = [_nnf(it, neg) for it in f.items]
        return disj(items) if neg else conj(items)
    if isinstance(f, Or):
        items = [_nnf(it, neg) for it in f.items]
        return conj(items) if neg else disj(items)
    if isinstance(f, Implies):
        return _nnf(disj([Not(f.antecedent), f.consequent]), neg)
    if isinstance(f, Iff):
        a, b = f.left, f.right
        return _nnf(conj([disj([Not(a), b]), disj([a, Not(b)])]), neg)
    if isinstance(f, ForallInd):
        return ExistsInd(f.var, _nnf(f.body, True)) if neg else ForallInd(f.var, _nnf(f.body, False))
    if isinstance(f, ExistsInd):
        return ForallInd(f.var, _nnf(f.body, True)) if neg else ExistsInd(f.var, _nnf(f.body, False))
    if isinstance(f, Forall2):
        return Exists2(f.sym, _nnf(f.body, True)) if neg else Forall2(f.sym, _nnf(f.body, False))
    if isinstance(f, Exists2):
        return Forall2(f.sym, _nnf(f.body, True)) if neg else Exists2(f.sym, _nnf(f.body, False))
    raise InternalError(f"unhandled formula in nnf: {type(f).__name__}")


# ---------------------------------------------------------------------------
# Simplifier
#
# A fixed, terminating, local rule set applied bottom-up to a syntactic
# fixpoint.  The full rule list (everything the simplifier ever does):
#
#   truth constants    T&A=A  F|A=A  T|A=T  F&A=F  ~T=F  ~F=T
#                      T->A=A  A->T=T  F->A=T  A->F=~A
#                      A<->T=A  T<->A=A  A<->F=~A  F<->A=~A
#   double negation    ~~A=A
#   idempotence        A&A=A  A|A=A          (order-preserving dedup)
#   complements        A&~A=F  A|~A=T        (within one level)
#   absorption         A&(A|B)=A  A|(A&B)=A  (within one level)
#   reflexivity        A->A=T  A<->A=T  t=t -> T
#   vacuous binders    (all x. A)=A when x not free in A; same for ex,
#                      All2/Ex2 when the symbol does not occur
#   flattening         nested &/& and |/| merged
#
# No tautology checking beyond these local rules: outputs stay predictable
# and traces honest.  Golden comparisons go through the oracle instead.


def simplify(f: Formula) -> Formula:
    prev = None
    cur = f
    for _ in range(_size(f) + 2):
        if cur == prev:
            return cur
        prev, cur = cur, _simp(cur)
    raise InternalError("simplifier failed to reach a fixpoint")


def _size(f: Formula) -> int:
    return 1 + sum(_size(g) for g in _children(f))


def _children(f: Formula):
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.items
    if isinstance(f, Implies):
        return (f.antecedent, f.consequent)
    if isinstance(f, Iff):
        return (f.left, f.right)
    if isinstance(f, (ForallInd, ExistsInd, Forall2, Exists2)):
        return (f.body,)
    if isinstance(f, (Lfp, Gfp)):
        return (f.body,)
    return ()


def _simp(f: Formula) -> Formula:
    if isinstance(f, (Top, Bottom, PropVar, Atom)):
        return f
    if isinstance(f, Equal):
        return TOP if f.left == f.right else f
    if isinstance(f, Not):
        b = _simp(f.body)
        if isinstance(b, Top):
            return BOT
        if isinstance(b, Bottom):
            return TOP
        if isinstance(b, Not):
            return b.body
        return Not(b)
    if isinstance(f, And):
        return _simp_nary(f, is_and=True)
    if isinstance(f, Or):
        return _simp_nary(f, is_and=False)
    if isinstance(f, Implies):
        a = _simp(f.antecedent)
        b = _simp(f.consequent)
        if isinstance(a, Top):
            return b
        if isinstance(a, Bottom) or isinstance(b, Top):
            return TOP
        if isinstance(b, Bottom):
            return _simp(Not(a))
        if a == b:
            return TOP
        return Implies(a, b)
    if isinstance(f, Iff):
        a = _simp(f.left)
        b = _simp(f.right)
        if isinstance(a, Top):
            return b
        if isinstance(b, Top):
            return a
        if isinstance(a, Bottom):
            return _simp(Not(b))
        if isinstance(b, Bottom):
            return _simp(Not(a))
        if a == b:
            return TOP
        return Iff(a, b)
    if isinstance(f, (ForallInd, ExistsInd)):
        b = _simp(f.body)
        if f.var not in free_ind_vars(b):
            return b
        return type(f)(f.var, b)
    if isinstance(f, (Forall2, Exists2)):
        b = _simp(f.body)
        if f.sym not in prop_symbols(b) and f.sym not in rel_symbols(b):
            return b
        return type(f)(f.sym, b)
    if isinstance(f, (Lfp, Gfp)):
        return type(f)(f.rel, f.argvars, _simp(f.body), f.applied)
    raise InternalError(f"unhandled formula in simplify: {type(f).__name__}")


def _simp_nary(f: Formula, is_and: bool) -> Formula:
    absorbing: Formula = BOT if is_and else TOP
    neutral: Formula = TOP if is_and else BOT
    items: list[Formula] = []
    for it in (f.items if isinstance(f, (And, Or)) else ()):
        s = _simp(it)
        if isinstance(s, And) and is_and:
            items.extend(s.items)
        elif isinstance(s, Or) and not is_and:
            items.extend(s.items)
        else:
            items.append(s)
    kept: list[Formula] = []
    seen: set[Formula] = set()
    for s in items:
        if s == absorbing:
            return absorbing
        if s == neutral or s in seen:
            continue
        seen.add(s)
        kept.append(s)
    # complements within this level
    for s in kept:
        comp = s.body if isinstance(s, Not) else Not(s)
        if comp in seen:
            return absorbing
    # absorption: inside a conjunction, drop any disjunction containing
    # another conjunct (dually for disjunctions)
    inner = Or if is_and else And
    result = [
        s
        for s in kept
        if not (isinstance(s, inner) and any(d in seen and d != s for d in s.items))
    ]
    return conj(result) if is_and else disj(result)
