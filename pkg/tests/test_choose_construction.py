import itertools
import math
import random
from fractions import Fraction

import pytest

from eulermeasure.choose_construction import CellSketch, choose_cells, ordered_distinct_measure
from eulermeasure.errors import ResourceLimitError
from eulermeasure.interval_sets import points
from eulermeasure.partition_combinatorics import falling_factorial, gen_binomial
from eulermeasure.setparse import parse_set_expression as parse

F = Fraction

FAMILY = [
    "{}",
    "{0}",
    "{0,1,2}",
    "(0,1)",
    "(0,1) u (2,3)",
    "(0,1) u (2,3) u (4,5) u (6,7)",
    "[0,1]",
    "{-5} u (0,1) u {2,3}",
    "{0,1} u (2,3) u (4,5) u (6,7)",
    "(-inf,0) u {1,2,3,4}",
]


class TestCellSketch:
    def test_measure_alternates_by_dimension(self):
        sketch = CellSketch((0, 0, 1, 2, 3, 3))
        assert sketch.measure == 1 + 1 - 1 + 1 - 1 - 1 == 0
        assert sketch.dimension_counts() == {0: 2, 1: 1, 2: 1, 3: 2}


class TestChooseCells:
    def test_two_intervals_choose_three(self):
        sketch = choose_cells(parse("(0,1) u (2,3)"), 3)
        assert sketch.dimensions == (3, 3, 3, 3)
        assert sketch.measure == -4 == gen_binomial(-2, 3)

    def test_three_points_choose_two(self):
        sketch = choose_cells(parse("{1,2,3}"), 2)
        assert sketch.dimensions == (0, 0, 0)
        assert sketch.measure == 3

    def test_interval_choose_two(self):
        sketch = choose_cells(parse("(0,1)"), 2)
        assert sketch.dimensions == (2,)
        assert sketch.measure == 1 == gen_binomial(-1, 2)

    def test_choose_zero(self):
        sketch = choose_cells(parse("{}"), 0)
        assert sketch.dimensions == (0,)
        assert sketch.measure == 1

    def test_provenance_counts_sum_to_k(self):
        sketch = choose_cells(parse("{-5} u (0,1) u {2,3}"), 3)
        for counts in sketch.provenance:
            assert sum(counts) == 3

    def test_point_pieces_carry_at_most_one(self):
        a = parse("{0,1} u (2,3)")
        for counts in choose_cells(a, 3).provenance:
            assert counts[0] <= 1 and counts[1] <= 1

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            choose_cells(parse("(0,1)"), 13)
        assert choose_cells(parse("(0,1)"), 13, cap=13).measure == gen_binomial(-1, 13)


class TestBinomialIdentity:
    @pytest.mark.parametrize("expr", FAMILY)
    def test_measure_equals_binomial(self, expr):
        a = parse(expr)
        chi = a.euler_measure()
        for k in range(7):
            assert choose_cells(a, k).measure == gen_binomial(chi, k)

    def test_finite_counts_against_enumeration(self):
        rng = random.Random(19)
        for _ in range(15):
            values = sorted({F(rng.randint(-20, 20), 2) for _ in range(rng.randint(0, 6))})
            a = points(values)
            for k in range(len(values) + 2):
                oracle = sum(1 for _ in itertools.combinations(values, k))
                assert choose_cells(a, k).measure == oracle == math.comb(len(values), k)


class TestOrderedDistinct:
    def test_chi_minus_two(self):
        assert ordered_distinct_measure(parse("(0,1) u (2,3)"), 3) == -24

    def test_three_points_pairs(self):
        assert ordered_distinct_measure(parse("{1,2,3}"), 2) == 6

    def test_k_zero(self):
        assert ordered_distinct_measure(parse("(0,1) u {4}"), 0) == 1

    @pytest.mark.parametrize("expr", FAMILY)
    def test_relations(self, expr):
        a = parse(expr)
        chi = a.euler_measure()
        for k in range(7):
            ordered = ordered_distinct_measure(a, k)
            assert ordered == math.factorial(k) * choose_cells(a, k).measure
            assert ordered == falling_factorial(chi, k)
