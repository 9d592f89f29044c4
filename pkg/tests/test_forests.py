import random

import pytest

from clustercount import (DominoTiling, Forest, bipartite_color,
                          canonical_form, dynkin, dynkin_tiling,
                          e_long_branch_end, leafy_tiling, normal_form_slots,
                          white_leaf)
from clustercount.errors import BadRank, EmptyCoveredSet
from clustercount.forests import BLACK, WHITE, parse_tree_text

from helpers import random_tree


class TestDynkin:
    def test_a3_path(self):
        f = dynkin("A", 3)
        assert f.edges == ((1, 2), (2, 3))

    def test_a0_empty(self):
        f = dynkin("A", 0)
        assert f.n_vertices == 0

    def test_d4_fork(self):
        f = dynkin("D", 4)
        assert f.edges == ((1, 3), (2, 3), (3, 4))

    def test_d3_is_a3_shaped(self):
        assert canonical_form(dynkin("D", 3)) == canonical_form(dynkin("A", 3))

    def test_e_shapes(self):
        e6 = dynkin("E", 6)
        assert sorted(e6.degree(v) for v in e6.vertices) == [1, 1, 1, 2, 2, 3]
        e8 = dynkin("E", 8)
        assert e8.degree(1) == 3
        assert e_long_branch_end(7) == 7

    def test_bad_ranks(self):
        with pytest.raises(BadRank):
            dynkin("A", -1)
        with pytest.raises(BadRank):
            dynkin("D", 2)
        with pytest.raises(BadRank):
            dynkin("E", 9)

    def test_normal_form_slots(self):
        assert normal_form_slots("A", 4) == ()
        assert normal_form_slots("A", 5) == (1,)
        assert normal_form_slots("D", 4) == (1, 2)
        assert normal_form_slots("D", 5) == (1,)
        assert normal_form_slots("E", 6) == ()
        assert normal_form_slots("E", 7) == (7,)
        assert normal_form_slots("E", 8) == ()


class TestColoring:
    def test_path(self):
        f = dynkin("A", 3)
        assert bipartite_color(f, anchor=1) == {1: WHITE, 2: BLACK, 3: WHITE}

    def test_single_vertex(self):
        f = dynkin("A", 1)
        assert bipartite_color(f) == {1: WHITE}

    def test_d4(self):
        f = dynkin("D", 4)
        assert bipartite_color(f, anchor=1) == {
            1: WHITE, 2: WHITE, 3: BLACK, 4: WHITE}

    def test_proper_on_all_labeled_trees_up_to_6(self):
        # every labeled tree on n <= 6 vertices via its attachment sequence
        import itertools
        for n in range(1, 7):
            for seq in itertools.product(*(range(1, i) for i in range(2, n + 1))):
                f = Forest.make(range(1, n + 1),
                                [(seq[i - 2], i) for i in range(2, n + 1)])
                col = bipartite_color(f)
                for u, v in f.edges:
                    assert col[u] != col[v]

    def test_proper_on_random_larger_trees(self):
        rng = random.Random(11)
        for _ in range(200):
            f = random_tree(rng, rng.randint(7, 9))
            col = bipartite_color(f)
            for u, v in f.edges:
                assert col[u] != col[v]


class TestLeafyTiling:
    def test_a4_full(self):
        t = leafy_tiling(dynkin("A", 4))
        assert set(t.dominoes) == {(1, 2), (3, 4)}
        assert t.is_full(dynkin("A", 4))

    def test_a3_avoids_first_vertex(self):
        t = leafy_tiling(dynkin("A", 3))
        assert t.dominoes == ((2, 3),)

    def test_d4_avoids_fork(self):
        t = leafy_tiling(dynkin("D", 4))
        assert t.dominoes == ((3, 4),)

    def test_uncovered_are_leaves(self):
        rng = random.Random(5)
        for _ in range(300):
            f = random_tree(rng, rng.randint(1, 10))
            t = leafy_tiling(f)
            for v in f.vertices:
                if v not in t.covered:
                    assert f.degree(v) <= 1

    def test_dynkin_tilings_avoid_exactly_the_slots(self):
        for typ, ranks in (("A", range(0, 9)), ("D", range(3, 9)),
                           ("E", (6, 7, 8))):
            for rank in ranks:
                f = dynkin(typ, rank)
                t = dynkin_tiling(typ, rank)
                uncovered = set(f.vertices) - set(t.covered)
                assert uncovered == set(normal_form_slots(typ, rank))

    def test_overlapping_dominoes_rejected(self):
        with pytest.raises(ValueError):
            DominoTiling.make([(1, 2), (2, 3)])


class TestWhiteLeaf:
    def test_a2_full(self):
        f = dynkin("A", 2)
        t = DominoTiling.make([(1, 2)])
        assert white_leaf(f, t, {1: WHITE, 2: BLACK}) == 1

    def test_single_domino_returns_white_end(self):
        f = dynkin("A", 2)
        t = DominoTiling.make([(1, 2)])
        assert white_leaf(f, t, {1: BLACK, 2: WHITE}) == 2

    def test_a4_schedule_start(self):
        # Only the order 1-then-3 leaves both covered whites at coefficient
        # 1 (flipping 3 first lets the later flip at 1 rescale vertex 3), so
        # the schedule must start at 1; see test_coeffs for the order oracle.
        f = dynkin("A", 4)
        t = DominoTiling.make([(1, 2), (3, 4)])
        col = {1: WHITE, 2: BLACK, 3: WHITE, 4: BLACK}
        assert white_leaf(f, t, col) == 1

    def test_empty_tiling_raises(self):
        f = dynkin("A", 2)
        with pytest.raises(EmptyCoveredSet):
            white_leaf(f, DominoTiling.make([]), {1: WHITE, 2: BLACK})


class TestCanonicalForm:
    def test_relabeling_invariance_paths(self):
        p123 = Forest.make([1, 2, 3], [(1, 2), (2, 3)])
        p321 = Forest.make([1, 2, 3], [(3, 2), (2, 1)])
        assert canonical_form(p123) == canonical_form(p321)

    def test_labels_distinguish(self):
        f = dynkin("A", 3)
        a = canonical_form(f, {1: 7, 2: 1, 3: 1})
        b = canonical_form(f, {1: 1, 2: 1, 3: 7})  # mirror image: same
        c = canonical_form(f, {1: 7, 2: 7, 3: 1})
        assert a == b
        assert a != c

    def test_different_sizes_differ(self):
        assert canonical_form(dynkin("A", 3)) != canonical_form(dynkin("A", 4))

    def test_random_relabeling_invariance(self):
        rng = random.Random(17)
        for _ in range(1000):
            n = rng.randint(1, 12)
            f = random_tree(rng, n)
            labels = {v: rng.randint(0, 3) for v in f.vertices}
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            mapping = dict(zip(f.vertices, perm))
            g = f.relabel(mapping)
            relabels = {mapping[v]: labels[v] for v in f.vertices}
            assert canonical_form(f, labels) == canonical_form(g, relabels)

    def test_forest_components_sorted(self):
        f1 = Forest.make([1, 2, 3, 4], [(1, 2)])
        f2 = Forest.make([1, 2, 3, 4], [(3, 4)])
        assert canonical_form(f1) == canonical_form(f2)


class TestForestBasics:
    def test_cycle_rejected(self):
        with pytest.raises(ValueError):
            Forest.make([1, 2, 3], [(1, 2), (2, 3), (3, 1)])

    def test_loop_rejected(self):
        with pytest.raises(ValueError):
            Forest.make([1], [(1, 1)])

    def test_undeclared_vertex_rejected(self):
        with pytest.raises(ValueError):
            Forest.make([1, 2], [(1, 3)])

    def test_components(self):
        f = Forest.make([1, 2, 3, 4, 5], [(1, 2), (4, 5)])
        assert f.components() == ((1, 2), (3,), (4, 5))

    def test_parse_tree_text(self):
        f = parse_tree_text("1 2\n2 3\n5\n# comment\n")
        assert f.vertices == (1, 2, 3, 5)
        assert f.edges == ((1, 2), (2, 3))
