"""Leaf-removal counting recursion, memoized on normalized canonical forms.

Removing a leaf f with neighbor g splits the points by whether the variable
at f vanishes:

    N_T(alpha) = q * N_T''(alpha'') + sum over invertible beta of
                 N_T'(alpha'(beta))

with the coefficient transforms from `coeffs.leaf_removal_transforms`.  The
base cases are the empty forest (one point) and a single vertex, where
x x' = 1 + alpha has q - 1 points, or 2q - 1 when alpha = -1.

Naively the beta sum has q - 1 branches, but normalizing each child and
keying the memo table on its canonical form collapses them to the handful
of genuinely distinct classes, so the recursion is fast even for large q.
"""

from __future__ import annotations

import time

from .coeffs import CoeffMap, leaf_removal_transforms, normalize
from .counting import CountReport, VarietyInstance
from .errors import ZeroCoefficient
from .forests import Forest, canonical_form, leafy_tiling


def _memo_key(forest: Forest, coeffs: CoeffMap, q: int):
    tiling = leafy_tiling(forest)
    norm = normalize(forest, tiling, coeffs)
    labels = {v: norm.coeffs.enc(v) for v in forest.vertices}
    return canonical_form(forest, labels), q


def _single_vertex_count(coeffs: CoeffMap, v: int, q: int) -> int:
    a = coeffs.enc(v)
    minus_one = coeffs.field.neg_enc(1)
    return 2 * q - 1 if a == minus_one else q - 1


def _pick_leaf(forest: Forest) -> int:
    """Leaf whose removal (with its neighbor) splits off the most components;
    any leaf is correct, this only speeds up the recursion."""
    best, best_score = None, None
    for f in sorted(forest.vertices):
        if forest.degree(f) != 1:
            continue
        g = forest.adjacency[f][0]
        score = len(forest.remove([f, g]).components())
        if best_score is None or score > best_score:
            best, best_score = f, score
    return best


def _count_tree(forest: Forest, coeffs: CoeffMap, field, memo: dict) -> int:
    q = field.q
    n = forest.n_vertices
    if n == 0:
        return 1
    if n == 1:
        return _single_vertex_count(coeffs, forest.vertices[0], q)
    key = _memo_key(forest, coeffs, q)
    hit = memo.get(key)
    if hit is not None:
        return hit
    f = _pick_leaf(forest)
    split = leaf_removal_transforms(forest, coeffs, f)
    total = q * _count_forest(split.doubleprimed_forest,
                              split.doubleprimed_coeffs, field, memo)
    for beta in range(1, q):
        total += _count_forest(split.primed.forest, split.primed.at(beta),
                               field, memo)
    memo[key] = total
    return total


def _count_forest(forest: Forest, coeffs: CoeffMap, field, memo: dict) -> int:
    total = 1
    for comp in forest.components():
        sub = forest.induced(comp)
        total *= _count_tree(sub, coeffs.restrict(comp), field, memo)
    return total


def recursive_count(instance: VarietyInstance,
                    memo: dict | None = None) -> CountReport:
    """Exact point count by the leaf-removal recursion.

    Passing a shared `memo` dict across calls reuses normalized sub-variety
    counts between related instances.
    """
    for v in instance.forest.vertices:
        if instance.coeffs.enc(v) == 0:
            raise ZeroCoefficient(f"coefficient at vertex {v} is zero")
    start = time.perf_counter()
    memo = {} if memo is None else memo
    total = _count_forest(instance.forest, instance.coeffs, instance.field,
                          memo)
    elapsed = (time.perf_counter() - start) * 1000
    return CountReport(instance.descriptor(), instance.field.q, "recursion",
                       total, elapsed_ms=elapsed)


def leaf_split_counts(instance: VarietyInstance, leaf: int,
                      memo: dict | None = None) -> tuple[int, int]:
    """The two terms of the recursion at `leaf`: (count of the locus where
    the leaf variable vanishes, count where it is invertible)."""
    memo = {} if memo is None else memo
    field = instance.field
    q = field.q
    split = leaf_removal_transforms(instance.forest, instance.coeffs, leaf)
    zero_part = q * _count_forest(split.doubleprimed_forest,
                                  split.doubleprimed_coeffs, field, memo)
    nonzero_part = sum(
        _count_forest(split.primed.forest, split.primed.at(beta), field, memo)
        for beta in range(1, q))
    return zero_part, nonzero_part
