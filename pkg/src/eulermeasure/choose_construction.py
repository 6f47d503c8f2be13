"""Subset selection from a 1-D set, realized as explicit open cells.

The set of increasing k-tuples drawn from a canonical set A splits into
strata indexed by how many of the k points land in each piece of A
(at most one per point piece, any number per open interval).  c ordered
points inside one open interval form an open c-simplex, so a stratum is
a single open cell whose dimension is the number of interval-placed
points.  Summing (-1)^dim over the strata gives the measure of the
whole selection set, which equals binom(chi(A), k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import ResourceLimitError
from .interval_sets import OpenInterval, Point, PolyhedralSet1D
from .partition_combinatorics import (
    DEFAULT_PARTITION_CAP,
    mobius_bottom,
    partitions_of,
)

DEFAULT_CHOOSE_CAP = 12


@dataclass(frozen=True)
class CellSketch:
    """Formal disjoint union of open cells, recorded by dimension.

    ``provenance`` optionally keeps, for each cell, the per-piece point
    counts that produced it.
    """

    dimensions: tuple[int, ...]
    provenance: tuple[tuple[int, ...], ...] | None = None

    @property
    def measure(self) -> int:
        return sum(-1 if d % 2 else 1 for d in self.dimensions)

    def dimension_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for d in self.dimensions:
            counts[d] = counts.get(d, 0) + 1
        return counts


def _count_vectors(pieces, k: int) -> Iterator[tuple[int, ...]]:
    """All ways to split k points over the pieces, 0/1 on point pieces."""

    def descend(i: int, remaining: int, acc: list[int]):
        if i == len(pieces):
            if remaining == 0:
                yield tuple(acc)
            return
        limit = 1 if isinstance(pieces[i], Point) else remaining
        for c in range(min(limit, remaining) + 1):
            acc.append(c)
            yield from descend(i + 1, remaining - c, acc)
            acc.pop()

    yield from descend(0, k, [])


def choose_cells(A: PolyhedralSet1D, k: int, cap: int = DEFAULT_CHOOSE_CAP) -> CellSketch:
    """Stratify the k-element selections from A into open cells."""
    if k > cap:
        raise ResourceLimitError(f"cell enumeration capped at k <= {cap} (requested {k})")
    pieces = A.pieces
    cells: list[tuple[int, tuple[int, ...]]] = []
    for counts in _count_vectors(pieces, k):
        dim = sum(
            c for c, piece in zip(counts, pieces) if isinstance(piece, OpenInterval)
        )
        cells.append((dim, counts))
    cells.sort()
    return CellSketch(
        tuple(dim for dim, _ in cells), tuple(counts for _, counts in cells)
    )


def ordered_distinct_measure(
    A: PolyhedralSet1D, k: int, cap: int = DEFAULT_PARTITION_CAP
) -> int:
    """Measure of the set of k-tuples of pairwise-distinct points of A.

    Computed by Mobius inversion over the partition lattice:
    sum over pi of mu(0, pi) * chi(A)^(number of blocks).
    """
    chi = A.euler_measure()
    return sum(mobius_bottom(pi) * chi ** pi.block_count for pi in partitions_of(k, cap))
