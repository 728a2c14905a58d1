"""Informal operator-cost comparison: weak forgetting eliminates the
universal quantifier conjunct by conjunct, so on rule-shaped theories it is
typically cheaper than strong forgetting, which must consider the conjunction
as a whole.  Run from the repository root::

    python3 benchmarks/bench_operators.py
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).parent.parent / "tests"))

from gen import forget_split, prop_theory
from dualforget import prop
from dualforget.syntax import PropVar, Implies, Not, Theory, conj, disj


def rule_theory(rng, n_rules, n_vars=10):
    """Implication-shaped theories (the common belief-base form)."""
    vars = [f"v{i}" for i in range(n_vars)]
    formulas = []
    for _ in range(n_rules):
        body = [PropVar(rng.choice(vars)) for _ in range(rng.randint(1, 3))]
        head = [PropVar(rng.choice(vars)) for _ in range(rng.randint(1, 2))]
        formulas.append(Implies(conj(body), disj(head)))
    return Theory("rules", tuple(formulas)), vars


def bench(n_theories=300, n_rules=8):
    rng = random.Random(3)
    cases = []
    for _ in range(n_theories):
        th, vars = rule_theory(rng, n_rules)
        shuffled = list(vars)
        rng.shuffle(shuffled)
        cases.append((th, shuffled[:3]))
    start = time.perf_counter()
    for th, forget in cases:
        prop.forget_weak(th, forget)
    t_weak = time.perf_counter() - start
    start = time.perf_counter()
    for th, forget in cases:
        prop.forget_strong(th, forget)
    t_strong = time.perf_counter() - start
    print(f"{n_theories} rule theories ({n_rules} rules, forget 3 of 10 vars)")
    print(f"  weak   (conjunct-wise): {t_weak:.3f} s")
    print(f"  strong (whole theory) : {t_strong:.3f} s")
    print(f"  ratio strong/weak     : {t_strong / t_weak:.2f}x")


if __name__ == "__main__":
    bench()
