"""Greedy Thompson approximation of circle maps."""

import math

import pytest

from thompson_holo.approximation import (
    CircleMap,
    approximate,
    circle_distance,
    identity_map,
    mobius_map,
    parse_map,
    rotation_map,
    sup_norm_error,
    tabulated_map,
    tie_break_report,
)
from thompson_holo.dyadic import DyadicRational
from thompson_holo.errors import DegenerateImage, NotMonotone
from thompson_holo.thompson import identity, parse_word


class TestCircleMap:
    def test_decreasing_rejected(self):
        with pytest.raises(NotMonotone):
            CircleMap(lambda x: (1.0 - x) % 1.0)

    def test_constant_rejected(self):
        with pytest.raises(NotMonotone):
            CircleMap(lambda x: 0.25)

    def test_winding_two_rejected(self):
        with pytest.raises(NotMonotone):
            CircleMap(lambda x: (2 * x) % 1.0)

    def test_mobius_parameter_validated(self):
        with pytest.raises(ValueError):
            mobius_map(0.8, 0.7)

    def test_wraps_input(self):
        f = rotation_map(DyadicRational.parse("1/2^2"))
        assert f(1.25) == pytest.approx(0.5)


class TestApproximate:
    def test_identity_exact(self):
        from thompson_holo.thompson import equals

        for n in (1, 2, 4):
            res = approximate(identity_map(), n)
            assert res.sup_error == 0.0
            assert equals(res.element, identity())
            assert res.marker_interval == 0

    def test_dyadic_rotation_exact(self):
        res = approximate(rotation_map(DyadicRational.parse("1/2^2")), 3)
        assert res.sup_error == 0.0
        assert res.marker_interval == 2  # image of 0 lands at 1/4
        assert res.element.marker == 2

    def test_rotation_matches_group_element(self):
        from thompson_holo.thompson import TreeDiagram, equals

        res = approximate(rotation_map(DyadicRational.parse("3/2^2")), 2)
        assert res.sup_error == pytest.approx(0.0, abs=1e-12)
        rot = TreeDiagram.parse("((..)(..))|((..)(..))@3")
        assert equals(res.element, rot)

    def test_mobius_errors_decrease(self):
        f = mobius_map(0.3, 0.1)
        errs = [approximate(f, n).sup_error for n in range(3, 8)]
        assert all(e2 < e1 for e1, e2 in zip(errs, errs[1:])), errs
        assert errs[-1] < 0.05

    def test_error_bounded_by_mesh(self):
        f = mobius_map(0.2, -0.25)
        res = approximate(f, 5)
        # the greedy range is a refinement into 2^n pieces; the element
        # interpolates f at every domain breakpoint image up to one cell
        assert res.sup_error <= 0.5
        assert len(res.range_partition) == 2**5

    def test_deterministic(self):
        f = mobius_map(0.3, 0.1)
        r1, r2 = approximate(f, 4), approximate(f, 4)
        assert r1.element == r2.element
        assert r1.ties == r2.ties

    def test_degenerate_image(self):
        # strictly increasing on the monotonicity grid, but constant on the
        # finer scale a level-13 approximation samples
        stair = CircleMap(lambda x: math.floor(x * 4096) / 4096)
        with pytest.raises(DegenerateImage):
            approximate(stair, 13)

    def test_level_validated(self):
        with pytest.raises(ValueError):
            approximate(identity_map(), 0)


class TestTies:
    def test_identity_ties_resolved_leftmost(self):
        events = tie_break_report(identity_map(), 3)
        assert events  # uniform points tie at every full level
        for ev in events:
            assert ev.chosen == min(ev.tied, key=lambda iv: iv.left.as_fraction())

    def test_tie_count_bounded(self):
        events = tie_break_report(mobius_map(0.1, 0.0), 4)
        assert len(events) <= 2**4 - 1  # one event max per split


class TestSupNorm:
    def test_identity_vs_half_rotation(self):
        f = rotation_map(DyadicRational.parse("1/2^1"))
        assert sup_norm_error(f, identity()) == pytest.approx(0.5)

    def test_circle_distance(self):
        assert circle_distance(0.1, 0.9) == pytest.approx(0.2)
        assert circle_distance(0.0, 1.0) == 0.0

    def test_zero_for_matching_element(self):
        f = rotation_map(DyadicRational.parse("1/2^2"))
        res = approximate(f, 2)
        assert sup_norm_error(f, res.element) == 0.0


class TestParseMap:
    def test_builtins(self):
        assert parse_map("identity").name == "identity"
        assert parse_map("rotation:1/2^1").name == "rotation:1/2^1"
        assert parse_map("mobius:0.3,0.1").name == "mobius:0.3,0.1"

    def test_file(self, tmp_path):
        p = tmp_path / "map.txt"
        rows = [(i / 64, ((i / 64) + 0.25) % 1.0) for i in range(64)]
        p.write_text(
            "# sampled rotation\n"
            + "\n".join(f"{x} {y}" for x, y in rows)
        )
        f = parse_map(str(p))
        assert f(0.0) == pytest.approx(0.25)
        res = approximate(f, 2)
        assert res.sup_error == pytest.approx(0.0, abs=1e-9)

    def test_tabulated_needs_two_points(self):
        with pytest.raises(ValueError):
            tabulated_map([(0.0, 0.0)])
