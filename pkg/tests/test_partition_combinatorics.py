import itertools
import math
import random
from fractions import Fraction

import pytest

from eulermeasure.errors import InputError, ResourceLimitError
from eulermeasure.partition_combinatorics import (
    SetPartition,
    falling_factorial,
    gen_binomial,
    iterated_binomial,
    mobius_bottom,
    partitions_of,
)

F = Fraction


def naive_partitions(k):
    """Independent oracle: canonicalize every block-assignment function."""
    seen = set()
    for assignment in itertools.product(range(k), repeat=k):
        blocks = {}
        for element, label in enumerate(assignment, start=1):
            blocks.setdefault(label, []).append(element)
        seen.add(frozenset(frozenset(b) for b in blocks.values()))
    return seen


class TestPartitionsOf:
    def test_k0(self):
        assert partitions_of(0) == [SetPartition(())]

    @pytest.mark.parametrize("k,bell", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_counts_match_oracle(self, k, bell):
        got = partitions_of(k)
        oracle = naive_partitions(k)
        assert len(got) == bell == len(oracle)
        as_sets = {frozenset(frozenset(b) for b in pi.blocks) for pi in got}
        assert as_sets == oracle

    def test_block_count_stored(self):
        for pi in partitions_of(4):
            assert pi.block_count == len(pi.blocks)

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            partitions_of(11)
        assert len(partitions_of(11, cap=11)) == 678570

    def test_invalid_partition(self):
        with pytest.raises(InputError):
            SetPartition(((1, 2), (2, 3)))
        with pytest.raises(InputError):
            SetPartition(((1, 3),))


class TestMobiusBottom:
    def test_all_singletons(self):
        assert mobius_bottom(SetPartition(((1,), (2,), (3,)))) == 1

    def test_one_pair(self):
        assert mobius_bottom(SetPartition(((1, 2), (3,)))) == -1

    def test_single_block(self):
        assert mobius_bottom(SetPartition(((1, 2, 3),))) == 2

    def test_product_formula(self):
        pi = SetPartition(((1, 2, 3), (4, 5), (6,)))
        assert mobius_bottom(pi) == 2 * -1 * 1


class TestGenBinomial:
    def test_negative_integer(self):
        assert gen_binomial(-2, 3) == -4

    def test_half(self):
        assert gen_binomial(F(1, 2), 2) == F(-1, 8)

    def test_k_zero(self):
        for x in (F(7, 3), F(-2), F(0)):
            assert gen_binomial(x, 0) == 1

    def test_matches_integer_binomial(self):
        for m in range(8):
            for k in range(8):
                assert gen_binomial(m, k) == (math.comb(m, k) if m >= k else 0)

    def test_pascal(self):
        rng = random.Random(3)
        for _ in range(30):
            x = F(rng.randint(-20, 20), rng.randint(1, 6))
            for k in range(1, 7):
                assert gen_binomial(x, k) == gen_binomial(x - 1, k) + gen_binomial(x - 1, k - 1)

    def test_negative_k(self):
        with pytest.raises(InputError):
            gen_binomial(1, -1)


class TestIteratedBinomial:
    def test_integers(self):
        assert iterated_binomial(4, [2, 2]) == math.comb(6, 2) == 15

    def test_half(self):
        assert iterated_binomial(F(1, 2), [2, 2]) == gen_binomial(F(-1, 8), 2) == F(9, 128)

    def test_empty_fold(self):
        assert iterated_binomial(F(5, 7), []) == F(5, 7)


class TestMobiusIdentity:
    def test_partition_lattice_identity(self):
        # sum over Pi_k of mu(0,pi) x^(blocks) equals the falling factorial
        rng = random.Random(13)
        for k in range(7):
            pis = partitions_of(k)
            for _ in range(20):
                x = F(rng.randint(-24, 24), rng.randint(1, 6))
                lhs = sum(mobius_bottom(pi) * x ** pi.block_count for pi in pis)
                assert lhs == falling_factorial(x, k)
