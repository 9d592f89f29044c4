"""Jacobian of the defining equations and exhaustive singular-point search.

With f_t = x_t x'_t - 1 - alpha_t * prod(neighbors), the Jacobian rows are
indexed by vertices and the 2n columns by (x_1..x_n, x'_1..x'_n):

    df_t/dx_t  = x'_t
    df_t/dx'_t = x_t
    df_t/dx_u  = -alpha_t * prod over s ~ t, s != u of x_s   (u ~ t)

A point is singular when the rank drops below the number of equations.
On the variety, any point where no vertex has x_t = x'_t = 0 is provably
smooth (choose the x'-column where x_t != 0 and the x-column elsewhere:
the vanishing x-vertices form an independent set, so the chosen minor is
triangular with invertible diagonal).  The scan uses that as a prefilter,
which `prefilter=False` disables for cross-checking.
"""

from __future__ import annotations

import itertools

from .counting import PointRecord, VarietyInstance, brute_points
from .errors import PointNotOnVariety
from .gf import Field


def _rhs(instance: VarietyInstance, record: PointRecord, t: int) -> int:
    fld = instance.field
    prod = instance.coeffs.enc(t)
    for s in instance.forest.adjacency[t]:
        prod = fld.mul_enc(prod, record.x[s].code)
    return fld.add_enc(prod, 1)


def verify_point(instance: VarietyInstance, record: PointRecord) -> bool:
    fld = instance.field
    return all(
        fld.mul_enc(record.x[t].code, record.xp[t].code) == _rhs(instance, record, t)
        for t in instance.forest.vertices)


def jacobian_at(instance: VarietyInstance, record: PointRecord) -> list[list[int]]:
    """n x 2n Jacobian (encodings), rows = vertex equations, columns = all
    x variables then all x' variables, both in vertex order."""
    if not verify_point(instance, record):
        raise PointNotOnVariety("record violates a defining equation")
    fld = instance.field
    vs = list(instance.forest.vertices)
    index = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    rows = []
    for t in vs:
        row = [0] * (2 * n)
        row[index[t]] = record.xp[t].code
        row[n + index[t]] = record.x[t].code
        for u in instance.forest.adjacency[t]:
            prod = fld.neg_enc(instance.coeffs.enc(t))
            for s in instance.forest.adjacency[t]:
                if s != u:
                    prod = fld.mul_enc(prod, record.x[s].code)
            row[index[u]] = prod
        rows.append(row)
    return rows


def rank(matrix: list[list[int]], field: Field) -> int:
    """Row rank by Gaussian elimination over the field (encodings in, exact)."""
    if not matrix:
        return 0
    rows = [list(r) for r in matrix]
    m, ncols = len(rows), len(rows[0])
    if field.k == 1:
        p = field.p
        r = 0
        for c in range(ncols):
            pivot = next((i for i in range(r, m) if rows[i][c] % p), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = pow(rows[r][c], -1, p)
            rows[r] = [(v * inv) % p for v in rows[r]]
            for i in range(m):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
            r += 1
            if r == m:
                break
        return r
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, m) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv_enc(rows[r][c])
        rows[r] = [field.mul_enc(v, inv) for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub_enc(a, field.mul_enc(f, b))
                           for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r


def _det(matrix: list[list[int]], field: Field) -> int:
    """Determinant by cofactor expansion; cross-check use only (tiny sizes)."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        if matrix[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = field.mul_enc(matrix[0][j], _det(minor, field))
        if j % 2:
            term = field.neg_enc(term)
        total = field.add_enc(total, term)
    return total


def all_minors_vanish(matrix: list[list[int]], field: Field, size: int) -> bool:
    """True when every size x size minor is zero.  Exponential; used only to
    cross-check the elimination rank on small test instances."""
    m = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    for rows_idx in itertools.combinations(range(m), size):
        for cols_idx in itertools.combinations(range(ncols), size):
            sub = [[matrix[i][j] for j in cols_idx] for i in rows_idx]
            if _det(sub, field) != 0:
                return False
    return True


def _could_be_singular(record: PointRecord) -> bool:
    return any(record.x[v].code == 0 and record.xp[v].code == 0
               for v in record.x)


def singular_points(instance: VarietyInstance, *, budget: int | None = None,
                    prefilter: bool = True) -> list[PointRecord]:
    """All points where the Jacobian rank drops below the equation count,
    sorted by coordinates."""
    n = instance.n
    out = []
    for rec in brute_points(instance, budget=budget):
        if prefilter and not _could_be_singular(rec):
            continue
        if rank(jacobian_at(instance, rec), instance.field) < n:
            out.append(rec)
    return sorted(out, key=lambda r: r.key())
