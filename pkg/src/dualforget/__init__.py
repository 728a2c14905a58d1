"""dualforget: dual forgetting operators over propositional and first-order
theories via second-order quantifier elimination, with a built-in brute-force
semantic oracle.

Strong (standard) forgetting keeps the strongest consequences expressible in
the remaining vocabulary (existential second-order quantification of the
forgotten symbols); weak forgetting keeps the weakest formula that still
implies the theory (universal quantification).  Strongest necessary and
weakest sufficient conditions of a query are the same two eliminations
applied to ``Th & A`` and ``Th -> A``.
"""

from . import fo, prop, semantics
from .errors import (
    ArityError,
    CaptureError,
    EvalError,
    GuardError,
    InternalError,
    LogicError,
    ParseError,
)
from .outcome import EliminationOutcome, Status, TraceStep
from .parser import parse_formula, parse_theory
from .printer import format_formula
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Bottom,
    Const,
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
    PropVar,
    Signature,
    Term,
    Theory,
    Top,
    Var,
    conj,
    disj,
    exists,
    exists2,
    forall,
    forall2,
    free_ind_vars,
    is_closed,
    polarity,
    prop_symbols,
    rel_symbols,
    signature_of,
)
from .transform import nnf, simplify, substitute_prop, substitute_rel

__version__ = "0.1.0"
