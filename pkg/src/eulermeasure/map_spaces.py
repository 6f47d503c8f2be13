"""Map spaces out of 1-D domains, graded by breakpoint count.

A piecewise-affine map from an open interval into a finite set is
constant between its breakpoints, so a map with breakpoints
x_1 < ... < x_k is the value sequence (v_0, u_1, v_1, .., u_k, v_k):
the value on each open stretch and at each breakpoint.  The only
constraint is that at each x_i the pair (u_i, v_i) must not both equal
the previous stretch value v_{i-1}, which leaves b^2 - 1 choices, hence
b * (b^2-1)^k maps over any fixed k-point breakpoint set.

For a codomain B that is a compact 1-D set rather than finite, the set
of affine maps from an open interval into B has Euler measure chi(B)
(each closed-interval component contributes a closed square of measure
1, each point component a point), and the same breakpoint grading gives
chi(B) * (chi(B)^2 - 1)^k exact-breakpoint measures.  Either way the
series continues to base/(1 + (base^2-1) t) and regularizes to 1/base,
or to 0 when the base is 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalCheckError, ResourceLimitError, UnsupportedDomainError
from .exact_series import (
    EulerSeries,
    Polynomial,
    RationalFunction,
    SeriesPrefix,
    continue_series,
    eval_at_one,
)
from .choose_construction import CellSketch
from .interval_sets import Point, PolyhedralSet1D
from .limits import enumeration_cap
from .partition_combinatorics import gen_binomial

GRADING = "breakpoints"
DEFAULT_PAIR_TERMS = 7


@dataclass(frozen=True)
class BreakpointCountTable:
    """n_k for maps graded by breakpoints: base^p * (base^2 - 1)^k.

    ``base`` is the codomain size for finite codomains and chi(B) for
    polyhedral ones; p is the number of open-interval components of the
    domain.
    """

    domain_components: int
    base: int
    symbolic: bool
    counts: tuple[int, ...]


def finite_map_count(bsize: int, k: int, mode: str = "formula", cap: int | None = None) -> int:
    """Maps from one open interval to a bsize-point set with k given breakpoints.

    formula mode returns bsize * (bsize^2 - 1)^k; brute mode enumerates
    all value sequences and rejects those where some nominal breakpoint
    has both values equal to the previous stretch value.
    """
    if bsize < 1:
        raise InputError("codomain size must be positive")
    if k < 0:
        raise InputError("breakpoint count must be non-negative")
    if mode == "formula":
        return bsize * (bsize ** 2 - 1) ** k
    if mode != "brute":
        raise InputError(f"unknown mode {mode!r}; use 'formula' or 'brute'")
    cap = enumeration_cap(cap)
    total = bsize ** (2 * k + 1)
    if total > cap:
        raise ResourceLimitError(
            f"brute enumeration of {total} value sequences exceeds cap {cap}"
        )
    count = 0
    for seq in itertools.product(range(bsize), repeat=2 * k + 1):
        ok = True
        for i in range(k):
            prev, at_bp, after = seq[2 * i], seq[2 * i + 1], seq[2 * i + 2]
            if at_bp == prev and after == prev:
                ok = False
                break
        if ok:
            count += 1
    return count


def _series_for_base(base: int, components: int, terms: int, symbolic: bool):
    counts = tuple(
        base ** components * (base ** 2 - 1) ** k for k in range(terms + 1)
    )
    prefix = SeriesPrefix(
        tuple(gen_binomial(-components, k) * counts[k] for k in range(terms + 1)),
        GRADING,
    )
    closed = RationalFunction(
        Polynomial.constant(base ** components),
        Polynomial((Fraction(1), Fraction(base ** 2 - 1))) ** components,
    )
    table = BreakpointCountTable(components, base, symbolic, counts)
    return EulerSeries(prefix, closed), table


@dataclass(frozen=True)
class HedralMapResult:
    """Regularized measure of the maps from A into a finite b-point set."""

    chi_domain: int
    bsize: int
    value: Fraction
    series: EulerSeries
    counts: BreakpointCountTable


def hedral_map_measure(
    A: PolyhedralSet1D, bsize: int, terms: int = DEFAULT_PAIR_TERMS
) -> HedralMapResult:
    """Regularized measure bsize^chi(A) of the finite-range map space.

    The domain must be a union of open intervals: breakpoints inside a
    point piece make no sense, and the value-sequence count would stop
    being independent of where the breakpoints sit.
    """
    if bsize < 1:
        raise InputError("codomain size must be positive")
    if any(isinstance(p, Point) for p in A.pieces):
        raise UnsupportedDomainError(
            "map-space domain must have no point pieces (isolated or endpoint "
            "points are not supported)"
        )
    p = len(A.pieces)
    series, table = _series_for_base(bsize, p, terms, symbolic=False)
    value = Fraction(bsize) ** (-p)
    if eval_at_one(series.closed_form) != value:
        raise InternalCheckError("hedral map series does not evaluate to bsize^chi")
    return HedralMapResult(-p, bsize, value, series, table)


def _breakpoint_mask_counts(bsize: int, k: int, cap: int | None) -> list[int]:
    """Number of value sequences per exact breakpoint mask (bit i = x_{i+1})."""
    cap = enumeration_cap(cap)
    total = bsize ** (2 * k + 1)
    if total > cap:
        raise ResourceLimitError(
            f"brute enumeration of {total} maps exceeds cap {cap}"
        )
    counts = [0] * (1 << k)
    for seq in itertools.product(range(bsize), repeat=2 * k + 1):
        mask = 0
        for i in range(k):
            prev, at_bp, after = seq[2 * i], seq[2 * i + 1], seq[2 * i + 2]
            if not (at_bp == prev and after == prev):
                mask |= 1 << i
        counts[mask] += 1
    return counts


def map_pair_count(bsize: int, k: int, cap: int | None = None) -> int:
    """Unordered pairs {f, g}, f != g, with breakpoint sets uniting to a fixed k-set.

    Every map over the k nominal breakpoints is enumerated and bucketed
    by its exact breakpoint set; pairs are then combined exactly, so the
    result is an exhaustive count, not a closed-form shortcut.
    """
    if bsize < 1:
        raise InputError("codomain size must be positive")
    if k < 0:
        raise InputError("breakpoint count must be non-negative")
    counts = _breakpoint_mask_counts(bsize, k, cap)
    full = (1 << k) - 1
    ordered = 0
    for m1, c1 in enumerate(counts):
        if not c1:
            continue
        for m2, c2 in enumerate(counts):
            if c2 and (m1 | m2) == full:
                ordered += c1 * c2
    distinct_ordered = ordered - counts[full]
    if distinct_ordered % 2:
        raise InternalCheckError("odd count of ordered distinct map pairs")
    return distinct_ordered // 2


@dataclass(frozen=True)
class MapPairResult:
    """Regularized measure of distinct map pairs from one open interval."""

    bsize: int
    value: Fraction
    counts: tuple[int, ...]
    series: EulerSeries


def map_pair_measure(
    bsize: int,
    terms: int = DEFAULT_PAIR_TERMS,
    max_order: int | None = None,
    cap: int | None = None,
) -> MapPairResult:
    """Series and value for unordered distinct pairs of maps from (0,1).

    The pair rank is the size of the union of the two breakpoint sets;
    counts come from exhaustive enumeration, the series coefficient is
    (-1)^k times the count, and the value is the continuation at t=1.
    """
    counts = tuple(map_pair_count(bsize, k, cap) for k in range(terms + 1))
    prefix = SeriesPrefix(
        tuple(Fraction((-1) ** k * counts[k]) for k in range(terms + 1)), GRADING
    )
    series = continue_series(prefix, max_order)
    return MapPairResult(bsize, series.regularized_value(), counts, series)


def affine_pair_space(B: PolyhedralSet1D) -> CellSketch:
    """Endpoint-pair region of the affine maps from an open interval into B.

    An affine map is fixed by its two endpoint limits (w, w'); the
    segment between them must stay inside B, which for compact B means
    both ends lie in one component.  Each closed-interval component
    contributes a closed square (one 2-cell, four 1-cells, four
    0-cells, measure 1) and each point component a single 0-cell, so the
    sketch's measure is the number of components, which is chi(B).
    """
    cls = B.classify()
    if not cls.compact:
        raise UnsupportedDomainError("affine map space needs a compact codomain")
    dims: list[int] = []
    provenance: list[tuple[int, ...]] = []
    for index, comp in enumerate(cls.components):
        if comp.is_point:
            dims.append(0)
            provenance.append((index, 0))
        else:
            for d in (2, 1, 1, 1, 1, 0, 0, 0, 0):
                dims.append(d)
                provenance.append((index, d))
    order = sorted(range(len(dims)), key=lambda i: (dims[i], provenance[i]))
    sketch = CellSketch(
        tuple(dims[i] for i in order), tuple(provenance[i] for i in order)
    )
    if sketch.measure != B.euler_measure():
        raise InternalCheckError("affine pair region measure differs from chi(B)")
    return sketch


@dataclass(frozen=True)
class SchanuelResult:
    """Regularized measure of all piecewise-affine maps (0,1) -> B."""

    chi_codomain: int
    value: Fraction
    series: EulerSeries
    counts: BreakpointCountTable
    subset_counts: tuple[int, ...]


def schanuel_measure(
    codomain: PolyhedralSet1D | int, terms: int = DEFAULT_PAIR_TERMS
) -> SchanuelResult:
    """Regularized measure of the full map space from (0,1) into B.

    Maps whose breakpoints lie inside a fixed k-set have measure
    chi(B)^(2k+1) (one chi(B) per breakpoint value and per stretch);
    inversion over the subset lattice leaves chi(B)(chi(B)^2-1)^k for
    exact breakpoint sets, so the series is chi(B)/(1+(chi(B)^2-1)t) and
    the value is 0 when chi(B) = 0 and 1/chi(B) otherwise.

    A concrete codomain must be compact; its measure is taken from the
    affine endpoint-pair region rather than assumed.
    """
    if isinstance(codomain, PolyhedralSet1D):
        chi_b = affine_pair_space(codomain).measure
    else:
        chi_b = int(codomain)
    series, table = _series_for_base(chi_b, 1, terms, symbolic=True)
    subset_counts = tuple(chi_b ** (2 * k + 1) for k in range(terms + 1))
    # chi(B) = 0 makes every coefficient vanish, so the closed form is
    # literally 0 and evaluation at t=1 never sees the nominal pole.
    value = series.regularized_value()
    expected = Fraction(0) if chi_b == 0 else Fraction(1, chi_b)
    if value != expected:
        raise InternalCheckError("map-space series does not evaluate to 1/chi(B)")
    return SchanuelResult(chi_b, value, series, table, subset_counts)
