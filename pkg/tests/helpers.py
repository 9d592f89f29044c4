"""Shared test oracles, kept independent of the library's counting paths."""

from __future__ import annotations

import itertools
import random

from clustercount import CoeffMap, Forest, VarietyInstance


def naive_count(instance: VarietyInstance) -> int:
    """Count by checking every (x, x') pair in F_q^(2n) directly against the
    defining equations.  Exponentially slower than the library's weighted
    scan and shares no code with it."""
    fld = instance.field
    vs = list(instance.forest.vertices)
    n = len(vs)
    total = 0
    for assignment in itertools.product(range(fld.q), repeat=2 * n):
        xs = dict(zip(vs, assignment[:n]))
        xps = dict(zip(vs, assignment[n:]))
        ok = True
        for t in vs:
            rhs = instance.coeffs.enc(t)
            for s in instance.forest.adjacency[t]:
                rhs = fld.mul_enc(rhs, xs[s])
            rhs = fld.add_enc(rhs, 1)
            if fld.mul_enc(xs[t], xps[t]) != rhs:
                ok = False
                break
        total += ok
    return total


def record_satisfies(instance: VarietyInstance, record) -> bool:
    """Re-verify one point record against the equations, via element ops."""
    one = instance.field.one()
    for t in instance.forest.vertices:
        rhs = instance.coeffs.get(t)
        for s in instance.forest.adjacency[t]:
            rhs = rhs * record.x[s]
        if record.x[t] * record.xp[t] != one + rhs:
            return False
    return True


def random_tree(rng: random.Random, n: int, base: int = 1) -> Forest:
    """Uniformly-attached random tree on vertices base..base+n-1."""
    verts = list(range(base, base + n))
    edges = [(verts[rng.randint(0, i - 1)], verts[i]) for i in range(1, n)]
    return Forest.make(verts, edges)


def random_coeffs(rng: random.Random, field, forest) -> CoeffMap:
    return CoeffMap.make(
        field, {v: rng.randint(1, field.q - 1) for v in forest.vertices})
