"""Conversions between package code arrays and oracle coefficient tuples."""

import numpy as np


def to_slow(F, v):
    return tuple(tuple(int(c) for c in F.digits[int(x)]) for x in np.asarray(v).reshape(-1))


def code_set(F, C):
    from ranksec.codes import codewords

    return {to_slow(F, w) for w in codewords(C)}


def nested_universe(p=2, ms=(1, 2, 3), ns=(1, 2, 3), max_k1=2):
    """Every nested pair C2 ⊊ C1 with dim C1 <= max_k1, for each (m, n)."""
    from ranksec import linalg as la
    from ranksec.codes import LinearCode
    from ranksec.fields import field

    for m in ms:
        F = field(p, m)
        for n in ns:
            codes = {k: [LinearCode.from_generator(F, B, n) for B in la.enumerate_subspaces(F, n, k)]
                     for k in range(min(max_k1, n) + 1)}
            for k1 in range(1, min(max_k1, n) + 1):
                for C1 in codes[k1]:
                    for k2 in range(k1):
                        for C2 in codes[k2]:
                            if C1.contains_code(C2):
                                yield C1, C2
