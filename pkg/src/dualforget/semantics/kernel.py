"""Kernel backend selection.

The compiled extension is used when present; otherwise the pure-Python
big-integer backend.  Set ``DUALFORGET_PURE=1`` to force the pure backend
(the benchmark uses this to compare the two)."""

from __future__ import annotations

import os

from ._program import CircuitBuilder

if os.environ.get("DUALFORGET_PURE"):
    from . import _kernel_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _impl

        BACKEND = "pure"


def eval_table(builder: CircuitBuilder, out: int) -> int:
    """Truth table of slot ``out`` as an integer over 2**n_vars bits (bit v
    = value under valuation v, where input i is true iff ``(v >> i) & 1``)."""
    nbits = 1 << builder.n_vars
    raw = _impl.eval_table(builder.n_vars, builder.ops, builder.arg1, builder.arg2, out)
    return int.from_bytes(raw, "little") & ((1 << nbits) - 1)


def eval_table_with(impl, builder: CircuitBuilder, out: int) -> int:
    """Like :func:`eval_table` with an explicit backend module (testing and
    benchmarking)."""
    nbits = 1 << builder.n_vars
    raw = impl.eval_table(builder.n_vars, builder.ops, builder.arg1, builder.arg2, out)
    return int.from_bytes(raw, "little") & ((1 << nbits) - 1)
