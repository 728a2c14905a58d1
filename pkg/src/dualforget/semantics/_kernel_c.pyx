# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truth-table kernel.

Same contract as ``_kernel_py.eval_table``: evaluate a boolean circuit over
all 2**n_vars valuations, returning the designated slot's truth table as
little-endian packed bytes.  Valuations are processed in blocks of 64, one
machine word per slot per block.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

ctypedef unsigned long long u64

# truth tables of inputs 0..5 within one 64-valuation block
cdef u64 _PAT[6]
_PAT[0] = 0xAAAAAAAAAAAAAAAAULL
_PAT[1] = 0xCCCCCCCCCCCCCCCCULL
_PAT[2] = 0xF0F0F0F0F0F0F0F0ULL
_PAT[3] = 0xFF00FF00FF00FF00ULL
_PAT[4] = 0xFFFF0000FFFF0000ULL
_PAT[5] = 0xFFFFFFFF00000000ULL

OP_CONST0 = 0
OP_CONST1 = 1
OP_NOT = 2
OP_AND = 3
OP_OR = 4
OP_VAR = 5


def eval_table(int n_vars, const unsigned char[:] ops, const long[:] arg1,
               const long[:] arg2, long out):
    cdef long n_ops = ops.shape[0]
    cdef long n_slots = n_vars + n_ops
    cdef long nbits = 1 << n_vars
    cdef long nblocks = (nbits + 63) >> 6
    cdef long nbytes = (nbits + 7) >> 3
    cdef long blk, k, i, take
    cdef u64 v
    cdef unsigned char op

    if out < 0 or out >= n_slots:
        raise ValueError("output slot out of range")

    result = bytearray(nbytes)
    cdef unsigned char[:] res = result
    cdef u64* slots = <u64*> malloc(n_slots * sizeof(u64))
    if slots == NULL:
        raise MemoryError()
    try:
        for blk in range(nblocks):
            for i in range(n_vars):
                if i < 6:
                    slots[i] = _PAT[i]
                else:
                    slots[i] = <u64> 0 - ((blk >> (i - 6)) & 1)
            for k in range(n_ops):
                op = ops[k]
                if op == 3:    # AND
                    slots[n_vars + k] = slots[arg1[k]] & slots[arg2[k]]
                elif op == 4:  # OR
                    slots[n_vars + k] = slots[arg1[k]] | slots[arg2[k]]
                elif op == 2:  # NOT
                    slots[n_vars + k] = ~slots[arg1[k]]
                elif op == 0:  # CONST0
                    slots[n_vars + k] = 0
                elif op == 1:  # CONST1
                    slots[n_vars + k] = ~(<u64> 0)
                elif op == 5:  # VAR alias
                    slots[n_vars + k] = slots[arg1[k]]
                else:
                    raise ValueError(f"bad opcode {op}")
            v = slots[out]
            take = nbytes - (blk << 3)
            if take > 8:
                take = 8
            for i in range(take):
                res[(blk << 3) + i] = <unsigned char> ((v >> (8 * i)) & 0xFF)
    finally:
        free(slots)
    return bytes(result)
