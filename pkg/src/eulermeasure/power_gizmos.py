"""Power sets of 1-D sets and iterated subset-selection gizmos.

The small power set 2^A (all finite subsets of A) is graded by subset
size; its Euler series is the binomial expansion of (1+t)^chi(A) and
its regularized value is 2^chi(A).  A gizmo iterates "choose k_i" on
top of 2^A, using the symmetric-difference order on subsets and the
lexicographic order on tuples; elements are graded by the size of their
support (the union of all underlying subsets).

The number n_k of gizmo elements over any fixed k-element support
depends only on k.  Two independent routes produce the regularized
measure:

* exponential fit: n_k is a fixed rational combination of the pure
  exponentials (2^j - 1)^k for j = 1..J, J = prod(k_i); the combination
  is solved from a Vandermonde system, verified on held-out counts, and
  evaluated directly at 2^chi(A);
* series regularization: the prefix binom(chi(A), k) * n_k is fitted to
  a linear recurrence and its rational continuation evaluated at t=1.

Both routes must agree with the iterated binomial coefficient of
2^chi(A), which is checked on every call.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalCheckError, ResourceLimitError
from .exact_series import (
    DEFAULT_TERMS,
    EulerSeries,
    Polynomial,
    RationalFunction,
    SeriesPrefix,
    binomial_prefix,
    continue_series,
    eval_at_one,
    solve_linear_system,
)
from .interval_sets import PolyhedralSet1D
from .limits import enumeration_cap
from .partition_combinatorics import gen_binomial, iterated_binomial
from .rationals import as_fraction

GRADING = "rank"


@dataclass(frozen=True)
class GizmoSpec:
    """Selection sizes k_1..k_r of an iterated-choice gizmo over 2^A."""

    ks: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(int(k) for k in self.ks)
        if any(k < 1 for k in ks):
            raise InputError("gizmo selection sizes must all be >= 1")
        object.__setattr__(self, "ks", ks)

    @property
    def depth(self) -> int:
        return len(self.ks)

    @property
    def fit_dimension(self) -> int:
        """J = prod(k_i), the number of exponential bases in the fit."""
        return math.prod(self.ks)


@dataclass(frozen=True)
class SupportCountTable:
    """n_k = number of gizmo elements whose support is a fixed k-set."""

    ks: tuple[int, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True)
class ExponentialFit:
    """Weights a_j with n_k = sum a_j (2^j - 1)^k for all k.

    The companion polynomial sum a_j x^j equals the iterated binomial
    coefficient of x for the same selection sizes; that identity is
    verified at construction time by gizmo_fit.
    """

    ks: tuple[int, ...]
    bases: tuple[int, ...]
    weights: tuple[Fraction, ...]
    polynomial: Polynomial

    def predicted_count(self, k: int) -> Fraction:
        return sum(
            (w * Fraction(b) ** k for w, b in zip(self.weights, self.bases)),
            Fraction(0),
        )

    def value_at(self, x) -> Fraction:
        return self.polynomial.evaluate(as_fraction(x))


def _iterated_total(spec: GizmoSpec, ground_size: int) -> int:
    """Number of gizmo elements over a finite ground set of the given size."""
    total = iterated_binomial(Fraction(2) ** ground_size, spec.ks)
    if total.denominator != 1:
        raise InternalCheckError("finite gizmo total is not an integer")
    return int(total)


def gizmo_support_count(spec: GizmoSpec, k: int) -> int:
    """n_k by Mobius inversion over sub-supports.

    Elements with support inside a fixed j-subset are exactly the gizmo
    elements over that j-point ground set, so
    n_k = sum_j (-1)^(k-j) binom(k,j) * total(j).
    """
    if k < 0:
        raise InputError("support size must be non-negative")
    return sum(
        (-1) ** (k - j) * math.comb(k, j) * _iterated_total(spec, j)
        for j in range(k + 1)
    )


def support_count_table(spec: GizmoSpec, last: int) -> SupportCountTable:
    return SupportCountTable(
        spec.ks, tuple(gizmo_support_count(spec, k) for k in range(last + 1))
    )


def gizmo_support_census(
    spec: GizmoSpec, ground_size: int, cap: int | None = None
) -> dict[frozenset, int]:
    """Exhaustive construction over {1..ground_size}: counts by exact support.

    Subsets are ordered by "S < T iff min(S symdiff T) lies in S", which
    is the lexicographic order on indicator strings with present < absent.
    Each selection level forms strictly increasing tuples of the previous
    level's elements; since those are kept in sorted order, the tuples
    are plain index combinations and inherit the lexicographic order.
    """
    cap = enumeration_cap(cap)
    ground = tuple(range(1, ground_size + 1))
    subsets = [frozenset(c) for n in range(ground_size + 1)
               for c in itertools.combinations(ground, n)]
    subsets.sort(key=lambda s: tuple(0 if g in s else 1 for g in ground))
    supports: list[frozenset] = subsets
    candidates = len(supports)
    for k_i in spec.ks:
        candidates += math.comb(len(supports), k_i)
        if candidates > cap:
            raise ResourceLimitError(
                f"gizmo enumeration needs more than {cap} candidate tuples; "
                "use gizmo_support_count instead"
            )
        supports = [
            frozenset().union(*(supports[i] for i in combo))
            for combo in itertools.combinations(range(len(supports)), k_i)
        ]
    return dict(Counter(supports))


def gizmo_brute_force(spec: GizmoSpec, k: int, cap: int | None = None) -> int:
    """n_k by exhaustive construction over the ground set {1..k}."""
    census = gizmo_support_census(spec, k, cap)
    return census.get(frozenset(range(1, k + 1)), 0)


def _binomial_of_polynomial(p: Polynomial, k: int) -> Polynomial:
    """binom(p(x), k) as a polynomial in x."""
    result = Polynomial.constant(1)
    for i in range(k):
        result = result * (p - Polynomial.constant(i))
    return result.scale(Fraction(1, math.factorial(k)))


def iterated_binomial_polynomial(ks) -> Polynomial:
    """The polynomial x -> iterated_binomial(x, ks)."""
    p = Polynomial.variable()
    for k in ks:
        p = _binomial_of_polynomial(p, k)
    return p


def gizmo_fit(spec: GizmoSpec, held_out: int = 4) -> ExponentialFit:
    """Solve n_k = sum a_j (2^j-1)^k on k = 1..J and verify the result.

    Verification failure here means a counting bug, not bad user input.
    """
    j_dim = spec.fit_dimension
    bases = tuple(2 ** j - 1 for j in range(1, j_dim + 1))
    targets = [gizmo_support_count(spec, k) for k in range(1, j_dim + held_out + 1)]
    rows = [
        [Fraction(b) ** k for b in bases] for k in range(1, j_dim + 1)
    ]
    rhs = [Fraction(t) for t in targets[:j_dim]]
    weights = solve_linear_system(rows, rhs)
    if weights is None:
        raise InternalCheckError("exponential-fit Vandermonde system is inconsistent")
    fit = ExponentialFit(
        spec.ks,
        bases,
        tuple(weights),
        Polynomial((Fraction(0),) + tuple(weights)),
    )
    for extra in range(held_out):
        k = j_dim + 1 + extra
        if fit.predicted_count(k) != targets[k - 1]:
            raise InternalCheckError(
                f"exponential fit fails on held-out support count n_{k}"
            )
    if fit.polynomial != iterated_binomial_polynomial(spec.ks):
        raise InternalCheckError(
            "fit weights disagree with the iterated binomial polynomial"
        )
    return fit


@dataclass(frozen=True)
class PowerSetResult:
    """Euler series and regularized measure of the small power set 2^A."""

    chi: int
    series: EulerSeries
    value: Fraction


def powerset_series(A: PolyhedralSet1D, terms: int = DEFAULT_TERMS) -> PowerSetResult:
    """Euler series of 2^A: binom(chi,k) t^k, closed form (1+t)^chi.

    The regularized value is 2^chi(A); the t=1 evaluation can never hit
    a pole because 1 + t is 2 there.
    """
    chi = A.euler_measure()
    prefix, closed = binomial_prefix(chi, 1, terms, grading=GRADING)
    rf = closed if isinstance(closed, RationalFunction) else RationalFunction.from_polynomial(closed)
    value = Fraction(2) ** chi
    if eval_at_one(rf) != value:
        raise InternalCheckError("power-set closed form does not evaluate to 2^chi")
    return PowerSetResult(chi, EulerSeries(prefix, rf), value)


@dataclass(frozen=True)
class GizmoMeasureResult:
    """Regularized gizmo measure with the evidence for both routes."""

    chi: int
    spec: GizmoSpec
    value: Fraction
    route_exponential: Fraction
    route_series: Fraction
    expected_iterated: Fraction
    fit: ExponentialFit | None
    counts: SupportCountTable
    series: EulerSeries


def _auto_order_bound(chi: int, j_dim: int) -> int:
    # chi >= 0 makes the series a polynomial of degree <= chi; chi < 0
    # stacks |chi| poles on each of the J exponential bases.
    return max(1, chi + 1 if chi >= 0 else -chi * j_dim)


def gizmo_measure(
    A: PolyhedralSet1D,
    spec: GizmoSpec,
    terms: int | None = None,
    max_order: int | None = None,
) -> GizmoMeasureResult:
    """Regularized Euler measure of G(2^A; k_1..k_r), by both routes.

    With terms/max_order unset they are sized from chi(A) and
    J = prod(k_i) so that the fit window determines the recurrence.
    Route disagreement raises an internal error.
    """
    chi = A.euler_measure()
    two_chi = Fraction(2) ** chi
    if not spec.ks:
        ps = powerset_series(A, terms if terms is not None else DEFAULT_TERMS)
        counts = SupportCountTable((), (1,) * len(ps.series.prefix))
        return GizmoMeasureResult(
            chi, spec, ps.value, ps.value, ps.value, two_chi, None, counts, ps.series
        )

    fit = gizmo_fit(spec)
    route_a = fit.value_at(two_chi)

    order_bound = _auto_order_bound(chi, spec.fit_dimension)
    if max_order is None:
        max_order = order_bound
    if terms is None:
        terms = 4 * max_order + 4
    if terms + 1 < 2 * max_order + 2:
        max_order = (terms - 1) // 2

    counts = support_count_table(spec, terms)
    prefix = SeriesPrefix(
        tuple(gen_binomial(chi, k) * counts.counts[k] for k in range(terms + 1)),
        GRADING,
    )
    series = continue_series(prefix, max_order)
    route_b = series.regularized_value()

    expected = iterated_binomial(two_chi, spec.ks)
    if not (route_a == route_b == expected):
        raise InternalCheckError(
            "route disagreement: exponential fit gives "
            f"{route_a}, series regularization gives {route_b}, "
            f"iterated binomial gives {expected}"
        )
    return GizmoMeasureResult(
        chi, spec, expected, route_a, route_b, expected, fit, counts, series
    )
