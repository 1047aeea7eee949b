"""Exact dyadic arithmetic, standard intervals, trees and partitions."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thompson_holo.dyadic import (
    DyadicPartition,
    DyadicRational,
    HALF,
    LEAF,
    ONE,
    StdDyadicInterval,
    TTree,
    ZERO,
    common_refinement,
    partition_to_tree,
    refines,
    tree_to_partition,
)
from thompson_holo.errors import NotStandardDyadic


dyadics = st.builds(
    DyadicRational,
    st.integers(min_value=-200, max_value=200),
    st.integers(min_value=0, max_value=10),
)


class TestDyadicRational:
    @given(dyadics, dyadics)
    def test_arithmetic_matches_fractions(self, x, y):
        assert (x + y).as_fraction() == x.as_fraction() + y.as_fraction()
        assert (x - y).as_fraction() == x.as_fraction() - y.as_fraction()
        assert (x * y).as_fraction() == x.as_fraction() * y.as_fraction()

    @given(dyadics)
    def test_canonical_form(self, x):
        assert x.exp == 0 or x.num % 2 == 1

    @given(dyadics)
    def test_parse_round_trip(self, x):
        assert DyadicRational.parse(str(x)) == x

    @given(dyadics, st.integers(min_value=-6, max_value=6))
    def test_scale_pow2(self, x, k):
        assert x.scale_pow2(k).as_fraction() == x.as_fraction() * Fraction(2) ** k

    @given(dyadics)
    def test_mod1_range(self, x):
        m = x.mod1()
        assert ZERO <= m < ONE
        assert (x - m).as_fraction().denominator == 1

    def test_ordering(self):
        assert DyadicRational(1, 2) < HALF < DyadicRational(3, 2) < ONE

    def test_parse_examples(self):
        assert DyadicRational.parse("3/2^2") == DyadicRational(3, 2)
        assert DyadicRational.parse("0") == ZERO
        assert str(DyadicRational(2, 3)) == "1/2^2"


class TestStdDyadicInterval:
    def test_halves(self):
        left, right = StdDyadicInterval(0, 1).halves()
        assert left == StdDyadicInterval(0, 2)
        assert right == StdDyadicInterval(1, 2)

    def test_from_endpoints_rejects_non_standard(self):
        with pytest.raises(NotStandardDyadic):
            StdDyadicInterval.from_endpoints(DyadicRational(1, 2), ONE)

    def test_bad_index(self):
        with pytest.raises(NotStandardDyadic):
            StdDyadicInterval(4, 2)


class TestTTree:
    def test_parse_round_trip(self):
        for text in [".", "(..)", "((..).)", "(.((..)(..)))"]:
            assert str(TTree.parse(text)) == text

    def test_leaf_intervals_tile(self):
        t = TTree.parse("((..)(.(..)))")
        ivs = t.leaf_intervals()
        assert ivs[0].left == ZERO and ivs[-1].right == ONE
        for a, b in zip(ivs, ivs[1:]):
            assert a.right == b.left

    def test_num_leaves(self):
        assert TTree.parse("((..)(.(..)))").num_leaves == 5
        assert LEAF.num_leaves == 1


class TestDyadicPartition:
    def test_rejects_non_standard(self):
        with pytest.raises(NotStandardDyadic):
            DyadicPartition([ZERO, DyadicRational(3, 3), ONE])

    def test_parse_and_str(self):
        p = DyadicPartition.parse("0, 1/2^1, 3/2^2, 1")
        assert len(p) == 3
        assert str(p) == "0, 1/2^1, 3/2^2, 1"

    def test_tree_bijection(self):
        for text in ["(..)", "((..).)", "((..)(.(..)))"]:
            t = TTree.parse(text)
            assert partition_to_tree(tree_to_partition(t)) == t

    def test_interval_index(self):
        p = DyadicPartition.parse("0, 1/2^1, 3/2^2, 1")
        assert p.interval_index(ZERO) == 0
        assert p.interval_index(HALF) == 1
        assert p.interval_index(DyadicRational(7, 3)) == 2


def random_partition(draw_tree) -> DyadicPartition:
    return tree_to_partition(draw_tree)


trees = st.recursive(
    st.just(LEAF), lambda kids: st.builds(TTree, kids, kids), max_leaves=12
)


class TestRefinement:
    @given(trees, trees)
    def test_common_refinement_refines_both(self, t1, t2):
        p1, p2 = tree_to_partition(t1), tree_to_partition(t2)
        cr = common_refinement(p1, p2)
        assert refines(p1, cr) and refines(p2, cr)

    @given(trees, trees)
    def test_common_refinement_is_coarsest(self, t1, t2):
        """Merging any sibling pair of the refinement must break refinement."""
        p1, p2 = tree_to_partition(t1), tree_to_partition(t2)
        cr = common_refinement(p1, p2)
        pts = list(cr.breakpoints)
        for i in range(1, len(pts) - 1):
            merged_pts = pts[:i] + pts[i + 1 :]
            try:
                merged = DyadicPartition(merged_pts)
            except NotStandardDyadic:
                continue
            assert not (refines(p1, merged) and refines(p2, merged))

    @given(trees)
    def test_self_refinement(self, t):
        p = tree_to_partition(t)
        assert refines(p, p)
        assert common_refinement(p, p) == p

    def test_example(self):
        p1 = DyadicPartition.parse("0, 1/2^2, 1/2^1, 1")
        p2 = DyadicPartition.parse("0, 1/2^1, 3/2^2, 1")
        cr = common_refinement(p1, p2)
        assert cr == DyadicPartition.parse("0, 1/2^2, 1/2^1, 3/2^2, 1")
