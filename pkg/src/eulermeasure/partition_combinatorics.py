"""Set partitions, their Mobius values, and generalized binomials.

The partition lattice on {1..k} enters through the bottom-to-pi Mobius
values mu(0,pi) = prod over blocks B of (-1)^(|B|-1) (|B|-1)!, which
turn counts of tuples with repeats into counts of tuples of distinct
entries.  Generalized binomial coefficients interpret binom(x, k) as
the degree-k polynomial x(x-1)...(x-k+1)/k! at any rational x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, ResourceLimitError
from .rationals import as_fraction

DEFAULT_PARTITION_CAP = 10


@dataclass(frozen=True)
class SetPartition:
    """Partition of {1..k} into disjoint blocks, sorted by least element.

    The block count is stored because it is the quantity the Mobius
    identity exponentiates in its hot loop.
    """

    blocks: tuple[tuple[int, ...], ...]
    block_count: int = -1

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        blocks = tuple(sorted(blocks, key=lambda b: b[0] if b else 0))
        seen: set[int] = set()
        for block in blocks:
            if not block:
                raise InputError("empty block in set partition")
            for el in block:
                if el in seen:
                    raise InputError(f"element {el} appears in two blocks")
                seen.add(el)
        k = len(seen)
        if seen != set(range(1, k + 1)):
            raise InputError("blocks must cover {1..k} exactly")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "block_count", len(blocks))

    @property
    def ground_size(self) -> int:
        return sum(len(b) for b in self.blocks)


def partitions_of(k: int, cap: int = DEFAULT_PARTITION_CAP) -> list[SetPartition]:
    """All set partitions of {1..k}, via restricted-growth strings."""
    if k < 0:
        raise InputError("k must be non-negative")
    if k > cap:
        raise ResourceLimitError(
            f"partition enumeration capped at k <= {cap} (requested {k})"
        )
    if k == 0:
        return [SetPartition(())]
    out: list[SetPartition] = []
    rgs = [0] * k

    def emit():
        nblocks = max(rgs) + 1
        blocks: list[list[int]] = [[] for _ in range(nblocks)]
        for i, b in enumerate(rgs):
            blocks[b].append(i + 1)
        out.append(SetPartition(tuple(tuple(b) for b in blocks)))

    def descend(i: int, mx: int):
        if i == k:
            emit()
            return
        for v in range(mx + 2):
            rgs[i] = v
            descend(i + 1, max(mx, v))

    descend(1, 0)
    return out


def mobius_bottom(pi: SetPartition) -> int:
    """mu(0, pi) in the partition lattice: prod (-1)^(|B|-1) (|B|-1)!."""
    value = 1
    for block in pi.blocks:
        m = len(block) - 1
        value *= (-1) ** m * math.factorial(m)
    return value


def falling_factorial(x, k: int) -> Fraction:
    """x (x-1) ... (x-k+1) at an arbitrary rational x."""
    if k < 0:
        raise InputError("k must be non-negative")
    x = as_fraction(x)
    value = Fraction(1)
    for i in range(k):
        value *= x - i
    return value


def gen_binomial(x, k: int) -> Fraction:
    """binom(x, k) as a polynomial in x, evaluated exactly."""
    return falling_factorial(x, k) / math.factorial(k)


def iterated_binomial(x, ks: Sequence[int]) -> Fraction:
    """Left fold of gen_binomial over ks, starting from x itself."""
    value = as_fraction(x)
    for k in ks:
        if k < 0:
            raise InputError("selection sizes must be non-negative")
        value = gen_binomial(value, k)
    return value
