import itertools
import random

import pytest

from clustercount import (CoeffMap, VarietyInstance, brute_count,
                          brute_points, dynkin, field_from_order, field_make,
                          normal_form_instance)
from clustercount.errors import ZeroCoefficient
from clustercount.recursion import (leaf_split_counts, recursive_count)

from helpers import random_coeffs, random_tree


def test_a2_all_ones_q3():
    inst = normal_form_instance(field_make(3), "A", 2)
    assert recursive_count(inst).count == 10


def test_a1_special_q7():
    inst = normal_form_instance(field_make(7), "A", 1, (-1,))
    assert recursive_count(inst).count == 13


def test_d4_generic_q5():
    inst = normal_form_instance(field_make(5), "D", 4, (2, 3))
    assert recursive_count(inst).count == 576


def test_empty_forest():
    inst = normal_form_instance(field_make(3), "A", 0)
    assert recursive_count(inst).count == 1


def test_matches_brute_exhaustively_tiny():
    # all coefficient maps on all shapes with <= 4 vertices, q <= 3
    shapes = [
        dynkin("A", 1), dynkin("A", 2), dynkin("A", 3), dynkin("A", 4),
        dynkin("D", 4),
    ]
    for f in shapes:
        for q in (2, 3):
            F = field_make(q)
            for vals in itertools.product(range(1, q), repeat=f.n_vertices):
                cm = CoeffMap.make(F, dict(zip(f.vertices, vals)))
                inst = VarietyInstance(f, cm, F)
                assert recursive_count(inst).count == brute_count(inst).count


def test_matches_brute_randomized():
    rng = random.Random(53)
    memo = {}
    for q in (2, 3, 4, 5):
        F = field_from_order(q)
        for _ in range(200):
            f = random_tree(rng, rng.randint(1, 8))
            inst = VarietyInstance(f, random_coeffs(rng, F, f), F)
            assert (recursive_count(inst, memo).count
                    == brute_count(inst).count)


def test_memoized_equals_unmemoized():
    rng = random.Random(59)
    shared = {}
    for _ in range(30):
        f = random_tree(rng, rng.randint(1, 7))
        q = rng.choice((2, 3, 5))
        F = field_make(q)
        inst = VarietyInstance(f, random_coeffs(rng, F, f), F)
        assert (recursive_count(inst).count
                == recursive_count(inst, shared).count)
    assert shared  # the shared table actually filled up


def test_split_terms_match_brute_loci():
    rng = random.Random(61)
    for _ in range(40):
        f = random_tree(rng, rng.randint(2, 6))
        q = rng.choice((2, 3, 5))
        F = field_make(q)
        inst = VarietyInstance(f, random_coeffs(rng, F, f), F)
        leaf = rng.choice([v for v in f.vertices if f.degree(v) == 1])
        zero_part, nonzero_part = leaf_split_counts(inst, leaf)
        pts = list(brute_points(inst))
        zero_brute = sum(1 for p in pts if p.x[leaf].is_zero())
        assert zero_part == zero_brute
        assert nonzero_part == len(pts) - zero_brute


def test_forest_product():
    from clustercount import Forest
    F = field_make(3)
    forest = Forest.make([1, 2, 3, 4, 5], [(1, 2), (4, 5)])
    cm = CoeffMap.ones(F, forest)
    inst = VarietyInstance(forest, cm, F)
    assert recursive_count(inst).count == brute_count(inst).count


def test_zero_coefficient_rejected():
    f = dynkin("A", 2)
    F = field_make(3)
    cm = CoeffMap.make(F, {1: 0, 2: 1}, allow_zero=True)
    with pytest.raises(ZeroCoefficient):
        recursive_count(VarietyInstance(f, cm, F))


def test_memo_collapses_beta_branches():
    # large q: the beta sum has q - 1 = 30 branches per removal, but the
    # memo should stay tiny because they normalize to few classes
    F = field_make(31)
    inst = normal_form_instance(F, "A", 5, (3,))
    memo = {}
    n = recursive_count(inst, memo).count
    generic = (31**3 - 1) * (31**4 - 1) // (31**2 - 1)
    assert n == generic
    assert len(memo) < 40
