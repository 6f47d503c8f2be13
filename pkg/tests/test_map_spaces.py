import itertools
from fractions import Fraction

import pytest

from eulermeasure.errors import InputError, ResourceLimitError, UnsupportedDomainError
from eulermeasure.exact_series import Polynomial, RationalFunction
from eulermeasure.interval_sets import points
from eulermeasure.map_spaces import (
    affine_pair_space,
    finite_map_count,
    hedral_map_measure,
    map_pair_count,
    map_pair_measure,
    schanuel_measure,
)
from eulermeasure.setparse import parse_set_expression as parse

F = Fraction


def rf(num, den):
    return RationalFunction(Polynomial(tuple(F(c) for c in num)), Polynomial(tuple(F(c) for c in den)))


def naive_pair_count(bsize, k):
    """Literal oracle: enumerate ordered pairs of value sequences."""

    def breakpoints(seq):
        mask = set()
        for i in range(k):
            prev, at_bp, after = seq[2 * i], seq[2 * i + 1], seq[2 * i + 2]
            if not (at_bp == prev and after == prev):
                mask.add(i)
        return frozenset(mask)

    maps = list(itertools.product(range(bsize), repeat=2 * k + 1))
    full = frozenset(range(k))
    count = 0
    for f in maps:
        for g in maps:
            if f != g and breakpoints(f) | breakpoints(g) == full:
                count += 1
    assert count % 2 == 0
    return count // 2


class TestFiniteMapCount:
    def test_two_valued_counts(self):
        assert [finite_map_count(2, k) for k in range(4)] == [2, 6, 18, 54]

    def test_constant_maps(self):
        assert finite_map_count(2, 0) == 2
        assert finite_map_count(5, 0, mode="brute") == 5

    def test_three_valued_one_breakpoint(self):
        assert finite_map_count(3, 1, mode="brute") == 24

    @pytest.mark.parametrize("bsize", range(1, 5))
    @pytest.mark.parametrize("k", range(4))
    def test_formula_equals_brute(self, bsize, k):
        assert finite_map_count(bsize, k) == finite_map_count(bsize, k, mode="brute")

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            finite_map_count(10, 5, mode="brute", cap=1000)

    def test_bad_mode(self):
        with pytest.raises(InputError):
            finite_map_count(2, 1, mode="magic")


class TestHedralMapMeasure:
    def test_interval_to_two_points(self):
        res = hedral_map_measure(parse("(0,1)"), 2)
        assert res.value == F(1, 2)
        assert res.series.closed_form == rf([2], [1, 3])
        assert res.series.prefix.coefficients[:4] == (2, -6, 18, -54)

    def test_two_component_domain(self):
        res = hedral_map_measure(parse("(0,1) u (2,3)"), 2)
        assert res.value == F(1, 4)
        assert res.counts.counts[:3] == (4, 12, 36)

    def test_single_valued_codomain(self):
        res = hedral_map_measure(parse("(0,1)"), 1)
        assert res.value == 1
        assert res.series.prefix.coefficients[:3] == (1, 0, 0)

    def test_rejects_point_pieces(self):
        for expr in ("{0} u (0,1)", "(0,1) u {5}", "{1}"):
            with pytest.raises(UnsupportedDomainError):
                hedral_map_measure(parse(expr), 2)

    @pytest.mark.parametrize("p", range(4))
    @pytest.mark.parametrize("bsize", range(1, 5))
    def test_functoriality(self, p, bsize):
        domain = parse(" u ".join(f"({2 * i},{2 * i + 1})" for i in range(p)) if p else "{}")
        assert hedral_map_measure(domain, bsize).value == F(bsize) ** (-p)

    def test_split_independence(self):
        # two-component domains: the count over a k-set of breakpoints is
        # the same however the breakpoints fall across components
        for bsize in range(1, 4):
            for k in range(3):
                expected = bsize ** 2 * (bsize ** 2 - 1) ** k
                for k1 in range(k + 1):
                    brute = finite_map_count(bsize, k1, mode="brute") * finite_map_count(
                        bsize, k - k1, mode="brute"
                    )
                    assert brute == expected


class TestMapPairs:
    def test_counts_match_closed_form(self):
        for k in range(4):
            assert map_pair_count(2, k) == 2 * 15 ** k - 3 ** k

    @pytest.mark.parametrize("bsize", [2, 3])
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_counts_match_literal_pair_enumeration(self, bsize, k):
        assert map_pair_count(bsize, k) == naive_pair_count(bsize, k)

    def test_pair_of_constants(self):
        assert map_pair_count(2, 0) == 1

    def test_measure(self):
        res = map_pair_measure(2)
        assert res.value == F(-1, 8)
        assert res.counts[:4] == (1, 27, 441, 6723)
        assert res.series.closed_form == rf([2], [1, 15]) - rf([1], [1, 3])

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            map_pair_count(2, 12, cap=1000)


class TestAffinePairSpace:
    def test_closed_interval(self):
        sketch = affine_pair_space(parse("[0,1]"))
        assert sketch.measure == 1
        assert sketch.dimension_counts() == {0: 4, 1: 4, 2: 1}

    def test_two_intervals(self):
        sketch = affine_pair_space(parse("[0,1] u [2,3]"))
        assert sketch.measure == 2

    def test_single_point(self):
        sketch = affine_pair_space(parse("{0}"))
        assert sketch.measure == 1
        assert sketch.dimensions == (0,)

    def test_mixed_components(self):
        sketch = affine_pair_space(parse("[0,1] u {2} u [3,4]"))
        assert sketch.measure == 3

    def test_rejects_non_compact(self):
        for expr in ("(0,1)", "[0,1)", "[0,1] u (2,3)", "[0,inf)"):
            with pytest.raises(UnsupportedDomainError):
                affine_pair_space(parse(expr))


class TestSchanuelMeasure:
    @pytest.mark.parametrize(
        "chi_b,expected",
        [(0, F(0)), (1, F(1)), (-1, F(-1)), (2, F(1, 2)), (-2, F(-1, 2)), (3, F(1, 3))],
    )
    def test_symbolic(self, chi_b, expected):
        res = schanuel_measure(chi_b)
        assert res.value == expected

    def test_zero_measure_series_vanishes(self):
        res = schanuel_measure(0)
        assert all(c == 0 for c in res.series.prefix.coefficients)

    def test_concrete_codomain(self):
        res = schanuel_measure(parse("[0,1] u [2,3]"))
        assert res.chi_codomain == 2
        assert res.value == F(1, 2)
        assert res.subset_counts[:3] == (2, 8, 32)
        assert res.counts.counts[:3] == (2, 6, 18)

    def test_three_component_codomain(self):
        res = schanuel_measure(parse("[0,1] u [2,3] u [4,5]"))
        assert res.value == F(1, 3)

    def test_concrete_requires_compact(self):
        with pytest.raises(UnsupportedDomainError):
            schanuel_measure(parse("(0,1)"))

    def test_finite_codomain_matches_hedral_counts(self):
        for m in range(1, 4):
            res = schanuel_measure(points(range(m)))
            for k in range(3):
                assert res.counts.counts[k] == finite_map_count(m, k, mode="brute")

    def test_boolean_lattice_inversion_identity(self):
        # sum_j (-1)^(k-j) C(k,j) x^(2j+1) == x (x^2-1)^k as polynomials
        import math

        x = Polynomial.variable()
        core = x * x - Polynomial.constant(1)
        for k in range(9):
            lhs = Polynomial(())
            for j in range(k + 1):
                lhs = lhs + (x ** (2 * j + 1)).scale((-1) ** (k - j) * math.comb(k, j))
            assert lhs == x * core ** k
