# cython: language_level=3, boundscheck=False, wraparound=False
# cython: initializedcheck=False, cdivision=True
"""Compiled enumeration kernel: weighted scan of x-assignments.

Field arithmetic is table-driven (a flattened q*q multiplication table and
a q-entry add-one table), so prime fields and small extension fields go
through the same loop.  The caller guarantees the accumulated count fits a
64-bit unsigned integer; `counting` only routes instances here when the
a-priori bound q^(n + ceil(n/2)) is far below 2^63.
"""

from libc.stdint cimport int64_t, uint64_t


def count_block(int n, int64_t q,
                int64_t[::1] mul,
                int64_t[::1] plus_one,
                int64_t[::1] alpha,
                int64_t[::1] nbr_off,
                int64_t[::1] nbr,
                int64_t lo, int64_t hi):
    """Count weighted assignments with base-q index in [lo, hi)."""
    cdef int64_t x[64]
    cdef int64_t idx, rem, prod, r
    cdef int t, j, zeros, dead
    cdef uint64_t total = 0, w

    if n == 0:
        return int(hi - lo)
    if n > 64:
        raise ValueError("kernel supports at most 64 vertices")

    rem = lo
    for t in range(n - 1, -1, -1):
        x[t] = rem % q
        rem = rem // q

    for idx in range(lo, hi):
        dead = 0
        zeros = 0
        for t in range(n):
            prod = alpha[t]
            for j in range(nbr_off[t], nbr_off[t + 1]):
                prod = mul[prod * q + x[nbr[j]]]
            r = plus_one[prod]
            if x[t] != 0:
                continue
            if r == 0:
                zeros += 1
            else:
                dead = 1
                break
        if not dead:
            w = 1
            for t in range(zeros):
                w *= <uint64_t> q
            total += w
        t = n - 1
        while t >= 0:
            x[t] += 1
            if x[t] < q:
                break
            x[t] = 0
            t -= 1

    return total
