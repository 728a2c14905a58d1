"""Benchmark: compiled truth-table kernel vs the pure-Python fallback.

Two workloads:

* raw circuit evaluation over all valuations at growing variable counts
  (the kernel's own job);
* a realistic oracle workload: the random-theory equivalence checks the
  property suites run, driven through each backend in turn.

Run from the repository root::

    PYTHONPATH=src:tests python3 benchmarks/bench_kernel.py
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).parent.parent / "tests"))

from dualforget.semantics import kernel
from dualforget.semantics import _kernel_py
from dualforget.semantics._program import CircuitBuilder

try:
    from dualforget.semantics import _kernel_c
except ImportError:
    _kernel_c = None


def random_circuit(rng, n_vars, n_ops):
    b = CircuitBuilder(n_vars)
    slots = list(range(n_vars)) or [b.const(True)]
    for _ in range(n_ops):
        op = rng.random()
        if op < 0.25:
            slots.append(b.not_(rng.choice(slots)))
        elif op < 0.65:
            slots.append(b.and2(rng.choice(slots), rng.choice(slots)))
        else:
            slots.append(b.or2(rng.choice(slots), rng.choice(slots)))
    return b, slots[-1]


def time_backend(impl, circuits, repeats):
    start = time.perf_counter()
    for _ in range(repeats):
        for b, out in circuits:
            kernel.eval_table_with(impl, b, out)
    return time.perf_counter() - start


def bench_raw():
    print("raw circuit evaluation (200 ops per circuit)")
    print(f"{'vars':>6} {'circuits':>9} {'pure [s]':>10} {'compiled [s]':>13} {'speedup':>8}")
    rng = random.Random(1)
    for n_vars, count, repeats in [(8, 50, 20), (12, 50, 10), (16, 20, 4), (20, 5, 2)]:
        circuits = [random_circuit(rng, n_vars, 200) for _ in range(count)]
        t_pure = time_backend(_kernel_py, circuits, repeats)
        if _kernel_c is None:
            print(f"{n_vars:>6} {count * repeats:>9} {t_pure:>10.3f} {'n/a':>13} {'n/a':>8}")
            continue
        t_comp = time_backend(_kernel_c, circuits, repeats)
        print(
            f"{n_vars:>6} {count * repeats:>9} {t_pure:>10.3f} {t_comp:>13.3f} "
            f"{t_pure / t_comp:>7.1f}x"
        )


def bench_workload():
    from gen import forget_split, prop_theory
    from dualforget import prop
    from dualforget.semantics import equiv_prop
    from dualforget.syntax import exists2, forall2

    def run(n):
        rng = random.Random(7)
        for _ in range(n):
            th = prop_theory(rng)
            forget, _ = forget_split(rng)
            strong = prop.forget_strong(th, forget).result
            weak = prop.forget_weak(th, forget).result
            assert equiv_prop(strong, exists2(forget, th.as_formula))
            assert equiv_prop(weak, forall2(forget, th.as_formula))

    print("\noracle workload (random-theory forgetting + equivalence checks)")
    n = 300
    results = {}
    for name, impl in [("pure", _kernel_py), ("compiled", _kernel_c)]:
        if impl is None:
            continue
        kernel._impl = impl
        start = time.perf_counter()
        run(n)
        results[name] = time.perf_counter() - start
        print(f"  {name:>9}: {results[name]:.3f} s for {n} theories")
    if "compiled" in results:
        print(f"  speedup: {results['pure'] / results['compiled']:.2f}x")


def main():
    print(f"active backend: {kernel.BACKEND}")
    if _kernel_c is None:
        print("compiled kernel not built; showing pure-backend timings only")
        print("build it with: python3 setup.py build_ext --inplace\n")
    bench_raw()
    bench_workload()


if __name__ == "__main__":
    main()
