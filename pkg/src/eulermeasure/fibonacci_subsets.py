"""Parity-constrained finite subsets of a 1-D set.

For a canonical set P, consider the finite subsets S of P such that the
measure of P-minus-S restricted to the open gap between any two
neighbours of S (including the virtual neighbours at -inf and +inf) is
even.  Gap measures add along consecutive selected points, so checking
consecutive gaps is equivalent to checking all pairs; the test suite
re-verifies that reduction exhaustively on finite sets.

Grading by |S|, the strata are open cells whose dimension is the number
of selected points lying inside open-interval pieces, so each valid
placement contributes (-1)^(interval-placed points).  The regularized
value of the resulting series equals the Fibonacci number F(chi(P)+1),
with the Fibonacci sequence continued to negative indices by running
its recurrence backward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import InternalCheckError, ResourceLimitError
from .exact_series import EulerSeries, SeriesPrefix, continue_series
from .interval_sets import OpenInterval, Point, PolyhedralSet1D

GRADING = "rank"
DEFAULT_STRATA_CAP = 10
DEFAULT_TERMS = 16


def extended_fibonacci(n: int) -> int:
    """F(n) for any integer n, F(1) = F(2) = 1, extended both ways."""
    if n >= 0:
        a, b = 0, 1
        for _ in range(n):
            a, b = b, a + b
        return a
    # backward: F(n-1) = F(n+1) - F(n)
    a, b = 0, 1  # F(0), F(1)
    for _ in range(-n):
        a, b = b - a, a
    return a


@dataclass(frozen=True)
class PlacementDescriptor:
    """Per-piece point counts of one k-point selection.

    Point pieces carry 0 or 1 (whether that point is selected); open
    intervals carry how many selected points lie inside.
    """

    counts: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.counts)

    def interval_points(self, pieces) -> int:
        return sum(
            c for c, piece in zip(self.counts, pieces) if isinstance(piece, OpenInterval)
        )


def enumerate_placements(P: PolyhedralSet1D, k: int) -> Iterator[PlacementDescriptor]:
    pieces = P.pieces

    def descend(i: int, remaining: int, acc: list[int]):
        if i == len(pieces):
            if remaining == 0:
                yield PlacementDescriptor(tuple(acc))
            return
        limit = 1 if isinstance(pieces[i], Point) else remaining
        for c in range(min(limit, remaining) + 1):
            acc.append(c)
            yield from descend(i + 1, remaining - c, acc)
            acc.pop()

    yield from descend(0, k, [])


def placement_gap_measures(P: PolyhedralSet1D, placement: PlacementDescriptor) -> list[int]:
    """chi of P-minus-S in every gap between consecutive selected points.

    Walks the pieces once, accumulating whole untouched pieces and the
    open fragments that selected points cut out of interval pieces.
    Positions inside an interval are symbolic; the fragments they leave
    are nonempty open intervals regardless, each of measure -1.
    """
    gaps: list[int] = []
    current = 0
    for piece, count in zip(P.pieces, placement.counts):
        if isinstance(piece, Point):
            if count:
                gaps.append(current)
                current = 0
            else:
                current += 1
        elif count == 0:
            current -= 1
        else:
            gaps.append(current - 1)  # fragment left of the first selected point
            gaps.extend([-1] * (count - 1))  # fragments between points inside
            current = -1  # fragment right of the last selected point
    gaps.append(current)
    return gaps


def parity_strata_coefficient(
    P: PolyhedralSet1D, k: int, cap: int = DEFAULT_STRATA_CAP
) -> int:
    """Signed count of the k-point strata whose gap measures are all even."""
    if k > cap:
        raise ResourceLimitError(
            f"stratum enumeration capped at k <= {cap} (requested {k})"
        )
    total = 0
    for placement in enumerate_placements(P, k):
        if all(g % 2 == 0 for g in placement_gap_measures(P, placement)):
            total += -1 if placement.interval_points(P.pieces) % 2 else 1
    return total


@dataclass(frozen=True)
class FibonacciResult:
    """Series, regularized value and the Fibonacci number it must match."""

    chi: int
    value: Fraction
    expected: int
    series: EulerSeries


def fibonacci_measure(
    P: PolyhedralSet1D, terms: int = DEFAULT_TERMS, max_order: int | None = None
) -> FibonacciResult:
    """Regularized measure of the parity-constrained subset family of P."""
    prefix = SeriesPrefix(
        tuple(
            Fraction(parity_strata_coefficient(P, k, cap=max(terms, DEFAULT_STRATA_CAP)))
            for k in range(terms + 1)
        ),
        GRADING,
    )
    series = continue_series(prefix, max_order)
    value = series.regularized_value()
    expected = extended_fibonacci(P.euler_measure() + 1)
    if value != expected:
        raise InternalCheckError(
            f"parity-subset measure {value} differs from Fibonacci number {expected}"
        )
    return FibonacciResult(P.euler_measure(), value, expected, series)
