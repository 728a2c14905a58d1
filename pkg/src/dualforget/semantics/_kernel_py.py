"""Pure-Python truth-table kernel.

Evaluates a boolean circuit over all 2**n_vars valuations at once, using
arbitrary-precision integers as bit-parallel truth tables: bit ``v`` of a
table is the value under the valuation where input ``i`` is true iff
``(v >> i) & 1``.  Same contract as the compiled backend in ``_kernel_c``.
"""

from ._program import OP_AND, OP_CONST0, OP_CONST1, OP_NOT, OP_OR, OP_VAR

_mask_cache: dict[tuple[int, int], int] = {}


def _var_mask(i: int, nbits: int) -> int:
    """Table of input ``i``: bit v set iff (v >> i) & 1."""
    key = (i, nbits)
    cached = _mask_cache.get(key)
    if cached is not None:
        return cached
    chunk = 1 << i
    period = chunk << 1
    if chunk >= nbits:
        m = 0
    else:
        unit = ((1 << chunk) - 1) << chunk
        reps = (nbits + period - 1) // period
        m = unit * (((1 << (reps * period)) - 1) // ((1 << period) - 1))
        m &= (1 << nbits) - 1
    _mask_cache[key] = m
    return m


def eval_table(n_vars: int, ops, arg1, arg2, out: int) -> bytes:
    """Run the circuit program; return the truth table of slot ``out`` as
    little-endian packed bytes of length ceil(2**n_vars / 8)."""
    nbits = 1 << n_vars
    full = (1 << nbits) - 1
    slots: list[int] = [_var_mask(i, nbits) for i in range(n_vars)]
    for k in range(len(ops)):
        op = ops[k]
        if op == OP_AND:
            slots.append(slots[arg1[k]] & slots[arg2[k]])
        elif op == OP_OR:
            slots.append(slots[arg1[k]] | slots[arg2[k]])
        elif op == OP_NOT:
            slots.append(slots[arg1[k]] ^ full)
        elif op == OP_CONST0:
            slots.append(0)
        elif op == OP_CONST1:
            slots.append(full)
        elif op == OP_VAR:
            slots.append(slots[arg1[k]])
        else:
            raise ValueError(f"bad opcode {op}")
    return slots[out].to_bytes((nbits + 7) // 8, "little")
