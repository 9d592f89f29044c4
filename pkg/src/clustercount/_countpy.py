"""NumPy fallback for the enumeration kernel.

Same contract as the compiled `_countcore.count_block`: count the weighted
x-assignments with index in [lo, hi), where the assignment index is read as
a base-q number whose most significant digit is the first vertex.  Each
vertex t with right-hand side r = 1 + alpha_t * prod(neighbors) contributes
a factor 1 if x_t != 0, q if x_t == 0 and r == 0, and kills the assignment
otherwise.
"""

from __future__ import annotations

import numpy as np

BLOCK = 1 << 15


def count_block(n, q, mul, plus_one, alpha, nbr_off, nbr, lo, hi,
                block=BLOCK) -> int:
    if n == 0:
        return int(hi - lo)
    total = 0
    for a in range(lo, hi, block):
        b = min(hi, a + block)
        m = b - a
        idx = np.arange(a, b, dtype=np.int64)
        x = np.empty((n, m), dtype=np.int64)
        rem = idx
        for t in range(n - 1, -1, -1):
            x[t] = rem % q
            rem = rem // q
        weight = np.ones(m, dtype=np.int64)
        alive = np.ones(m, dtype=bool)
        for t in range(n):
            prod = np.full(m, alpha[t], dtype=np.int64)
            for j in range(nbr_off[t], nbr_off[t + 1]):
                prod = mul[prod, x[nbr[j]]]
            r = plus_one[prod]
            zero_here = x[t] == 0
            alive &= ~(zero_here & (r != 0))
            np.multiply(weight, q, out=weight, where=zero_here & (r == 0))
        total += int(weight[alive].sum())
    return total
