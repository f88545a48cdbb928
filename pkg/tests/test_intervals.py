from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clogkit import (
    CylinderSpec,
    DomainError,
    Interval,
    clog_terms,
    cylinder_contains,
    cylinder_endpoints,
    cylinder_endpoints_gcf,
    cylinder_measure,
    naturals,
)


@st.composite
def cylinder_specs(draw, max_rank=5):
    b = draw(st.integers(min_value=2, max_value=5))
    n = draw(st.integers(min_value=1, max_value=max_rank))
    ks = tuple(draw(st.integers(min_value=0, max_value=5)) for _ in range(n))
    ls = tuple(draw(st.integers(min_value=1, max_value=b - 1)) for _ in range(n))
    return CylinderSpec(b, ks, ls)


class TestInterval:
    def test_measure_and_containment(self):
        iv = Interval(Fraction(5, 4), Fraction(3, 2))
        assert iv.measure == Fraction(1, 4)
        assert iv.contains(Fraction(4, 3))
        assert not iv.contains(Fraction(5, 4))  # open at both ends
        assert not iv.contains(2)

    def test_degenerate_rejected(self):
        with pytest.raises(DomainError):
            Interval(Fraction(1), Fraction(1))
        with pytest.raises(DomainError):
            Interval(Fraction(2), Fraction(1))


class TestCylinderSpec:
    def test_rank(self):
        assert CylinderSpec(2, (0, 1, 0), (1, 1, 1)).rank == 3

    def test_validation(self):
        with pytest.raises(DomainError):
            CylinderSpec(2, (), ())
        with pytest.raises(DomainError):
            CylinderSpec(2, (0, 1), (1,))
        with pytest.raises(DomainError):
            CylinderSpec(2, (-1,), (1,))
        with pytest.raises(DomainError):
            CylinderSpec(2, (0,), (2,))  # base 2 digits are only 1
        with pytest.raises(DomainError):
            CylinderSpec(1, (0,), (1,))


class TestRankOne:
    @pytest.mark.parametrize(
        "b,k,ell",
        [(2, 0, 1), (2, 3, 1), (3, 0, 2), (3, 2, 1), (5, 1, 4), (10, 0, 9)],
    )
    def test_closed_form_endpoints(self, b, k, ell):
        iv = cylinder_endpoints(CylinderSpec(b, (k,), (ell,)))
        assert iv.lo == 1 + Fraction(1, (ell + 1) * b**k)
        assert iv.hi == 1 + Fraction(1, ell * b**k)
        assert iv.measure == Fraction(1, ell * (ell + 1) * b**k)

    def test_binary_examples(self):
        first = cylinder_endpoints(CylinderSpec(2, (0,), (1,)))
        assert (first.lo, first.hi) == (Fraction(3, 2), Fraction(2))
        assert cylinder_measure(CylinderSpec(2, (0,), (1,))) == Fraction(1, 2)

        second = cylinder_endpoints(CylinderSpec(2, (1,), (1,)))
        assert (second.lo, second.hi) == (Fraction(5, 4), Fraction(3, 2))
        assert cylinder_measure(CylinderSpec(2, (1,), (1,))) == Fraction(1, 4)

    @pytest.mark.parametrize("b", [2, 3, 5])
    @pytest.mark.parametrize("cap", [0, 1, 4])
    def test_truncated_sum_identity(self, b, cap):
        total = sum(
            cylinder_measure(CylinderSpec(b, (k,), (ell,)))
            for k in range(cap + 1)
            for ell in range(1, b)
        )
        assert total == 1 - Fraction(1, b ** (cap + 1))

    def test_rank_one_tiles_are_disjoint(self):
        b = 3
        tiles = [
            cylinder_endpoints(CylinderSpec(b, (k,), (ell,)))
            for k in range(4)
            for ell in range(1, b)
        ]
        tiles.sort(key=lambda iv: iv.lo)
        for left, right in zip(tiles, tiles[1:]):
            assert left.hi <= right.lo


class TestNesting:
    @settings(max_examples=200, deadline=None)
    @given(spec=cylinder_specs(max_rank=4), k=st.integers(0, 4), data=st.data())
    def test_child_sits_inside_parent_with_bounded_ratio(self, spec, k, data):
        ell = data.draw(st.integers(min_value=1, max_value=spec.b - 1))
        child = CylinderSpec(spec.b, spec.ks + (k,), spec.ls + (ell,))
        outer = cylinder_endpoints(spec)
        inner = cylinder_endpoints(child)
        assert outer.lo <= inner.lo < inner.hi <= outer.hi
        ratio = inner.measure / outer.measure
        unit = Fraction(1, ell * (ell + 1) * spec.b**k)
        assert unit / 4 <= ratio <= 2 * unit

    @settings(max_examples=60, deadline=None)
    @given(spec=cylinder_specs(max_rank=3))
    def test_children_tile_the_parent_contiguously(self, spec):
        cap = 6
        parent = cylinder_endpoints(spec)
        children = sorted(
            (
                cylinder_endpoints(CylinderSpec(spec.b, spec.ks + (k,), spec.ls + (ell,)))
                for k in range(cap + 1)
                for ell in range(1, spec.b)
            ),
            key=lambda iv: iv.lo,
        )
        for left, right in zip(children, children[1:]):
            assert left.hi == right.lo
        # the chain is flush against one parent endpoint and creeps toward
        # the other as the exponent cap grows
        touches = children[0].lo == parent.lo or children[-1].hi == parent.hi
        assert touches
        uncovered = parent.measure - (children[-1].hi - children[0].lo)
        tail = Fraction(1, spec.b ** (cap + 1))
        assert parent.measure * tail / 4 <= uncovered <= 2 * parent.measure * tail


class TestMembership:
    @settings(max_examples=150, deadline=None)
    @given(spec=cylinder_specs(max_rank=4))
    def test_midpoint_is_a_member(self, spec):
        iv = cylinder_endpoints(spec)
        mid = (iv.lo + iv.hi) / 2
        assert cylinder_contains(spec, mid)

    @settings(max_examples=150, deadline=None)
    @given(spec=cylinder_specs(max_rank=4))
    def test_sibling_midpoint_is_not(self, spec):
        sibling = CylinderSpec(spec.b, spec.ks[:-1] + (spec.ks[-1] + 1,), spec.ls)
        mid_sibling = (cylinder_endpoints(sibling).lo + cylinder_endpoints(sibling).hi) / 2
        assert not cylinder_contains(spec, mid_sibling)

    def test_values_outside_the_unit_window(self):
        spec = CylinderSpec(2, (0,), (1,))
        assert not cylinder_contains(spec, Fraction(1, 2))
        assert not cylinder_contains(spec, 1)
        assert not cylinder_contains(spec, 3)

    def test_the_exact_convergent_belongs_to_its_own_cylinder(self):
        # 3/2 expands to exactly [1*2^0; 1*2^1]: it is the boundary rational
        # owned by the path (k=1, l=1), not by (k=0, l=1) whose interval
        # it also touches.
        assert cylinder_contains(CylinderSpec(2, (1,), (1,)), Fraction(3, 2))
        assert not cylinder_contains(CylinderSpec(2, (0,), (1,)), Fraction(3, 2))

    def test_rank_two_worked_example(self):
        spec = CylinderSpec(2, (0, 1), (1, 1))
        iv = cylinder_endpoints(spec)
        assert (iv.lo, iv.hi) == (Fraction(5, 3), Fraction(9, 5))
        assert iv.measure == Fraction(2, 15)
        assert cylinder_contains(spec, Fraction(26, 15))


class TestGcfCylinders:
    @settings(max_examples=150, deadline=None)
    @given(spec=cylinder_specs(max_rank=4))
    def test_clog_sequence_reproduces_type3_cylinders(self, spec):
        seq = clog_terms(spec.b)
        indices = [k * (spec.b - 1) + (ell - 1) for k, ell in zip(spec.ks, spec.ls)]
        assert cylinder_endpoints_gcf(seq, indices) == cylinder_endpoints(spec)

    @pytest.mark.parametrize("j", range(6))
    def test_naturals_rank_one(self, j):
        iv = cylinder_endpoints_gcf(naturals(), [j])
        assert iv.lo == 1 + Fraction(1, j + 2)
        assert iv.hi == 1 + Fraction(1, j + 1)

    def test_naturals_second_tile(self):
        # the cell of continued fractions beginning [1; 2, ...]
        iv = cylinder_endpoints_gcf(naturals(), [1])
        assert (iv.lo, iv.hi) == (Fraction(4, 3), Fraction(3, 2))
        assert iv.measure == Fraction(1, 6)

    def test_path_validation(self):
        with pytest.raises(DomainError):
            cylinder_endpoints_gcf(naturals(), [])
        with pytest.raises(DomainError):
            cylinder_endpoints_gcf(naturals(), [0, -2])
