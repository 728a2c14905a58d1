"""Cross-cutting invariants: oracle self-consistency and deeper soundness
spot checks at domain size 3."""

import random

import pytest

from conftest import load_theory
from gen import prop_formula
from dualforget import fo
from dualforget.outcome import Status
from dualforget.parser import parse_formula
from dualforget.semantics import (
    FiniteInterpretation,
    equiv_fo_finite,
    eval_fo,
    eval_prop,
    eval_so,
)
from dualforget.syntax import Exists2, exists2, prop_symbols


def test_eval_prop_agrees_with_eval_fo_on_prop_formulas():
    rng = random.Random(71)
    for _ in range(100):
        f = prop_formula(rng)
        vocab = sorted(prop_symbols(f))
        for v in range(1 << len(vocab)):
            val = {name: bool((v >> i) & 1) for i, name in enumerate(vocab)}
            m = FiniteInterpretation(1, {}, {}, dict(val))
            assert eval_prop(f, val) == eval_fo(f, m)


def test_strong_forgetting_two_symbols_sound():
    _, th = load_theory("symptoms.th")
    out = fo.forget_strong(th, ["t", "h"])
    assert out.ok
    quantified = exists2(["t", "h"], th.as_formula)
    for dom in (1, 2):
        assert equiv_fo_finite(out.result, quantified, max_domain=dom)


def test_symptoms_sound_at_domain_three():
    _, th = load_theory("symptoms.th")
    out = fo.forget_strong(th, ["t"])
    assert equiv_fo_finite(out.result, Exists2("t", th.as_formula), max_domain=3)


def test_fixpoint_matches_so_enumeration_at_domain_three():
    # sampled domain-3 interpretations: evaluating the fixpoint result must
    # agree with enumerating all 2**9 extensions of the forgotten relation
    _, th = load_theory("network.th")
    out = fo.forget_strong(th, ["r"])
    assert out.status is Status.FIXPOINT
    quantified = Exists2("r", th.as_formula)
    rng = random.Random(73)
    d = 3
    pairs = [(a, b) for a in range(d) for b in range(d)]
    for _ in range(12):
        con = frozenset(t for t in pairs if rng.random() < 0.3)
        ex_ = frozenset((a,) for a in range(d) if rng.random() < 0.4)
        in_ = frozenset((a,) for a in range(d) if rng.random() < 0.4)
        sec = frozenset((a,) for a in range(d) if rng.random() < 0.4)
        m = FiniteInterpretation(d, {}, {"con": con, "ex": ex_, "in": in_, "sec": sec})
        assert eval_fo(out.result, m) == eval_so(quantified, m)
