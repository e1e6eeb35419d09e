"""Exhaustive enumeration of Northcott sets and Bogomolov-gap scanning.

For degree k and height bound T, any algebraic number of degree k with
h < T has an irreducible minimal polynomial f with M(f) < e^(kT); then
|lc(f)| <= M(f) and |a_i| <= C(k,i) * M(f), so a finite coefficient box
contains every candidate.  Candidates are kept when they are irreducible,
canonical, and certified M < e^(kT) (torsion decided symbolically, the rest
by interval refinement, which terminates because M is algebraic while
e^(kT) is transcendental).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetError, DomainError
from .heights import AlgebraicNumber, HeightInterval, height, mahler_measure
from .intervals import exp_bounds, floor_of_exp, floor_of_product_exp
from .polycore import IntPoly, _torsion_order_unchecked, is_irreducible

DEFAULT_BUDGET = 10**8
DEFAULT_TOL = Fraction(1, 10**9)


@dataclass(frozen=True)
class NorthcottSet:
    """All algebraic numbers of degree <= degree_bound with h < height_bound,
    canonically ordered and closed under conjugation."""

    degree_bound: int
    height_bound: Fraction
    elements: tuple[AlgebraicNumber, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        return a in set(self.elements)

    def minpolys(self) -> list[IntPoly]:
        seen = []
        for a in self.elements:
            if not seen or seen[-1] != a.minpoly:
                seen.append(a.minpoly)
        return seen


def _mahler_below_exp(f: IntPoly, target: Fraction) -> bool:
    """Certified M(f) < e^target for irreducible canonical f, target > 0."""
    if f == IntPoly((0, 1)) or _torsion_order_unchecked(f) is not None:
        return True  # M = 1 exactly and e^target > 1
    if f.degree == 1:
        m_exact = Fraction(max(abs(f.coeffs[0]), abs(f.coeffs[1])))
        err = Fraction(1, 1 << 16)
        while True:
            e_lo, e_hi = exp_bounds(target, err)
            if m_exact < e_lo:
                return True
            if m_exact > e_hi:
                return False
            err /= 256
    err = Fraction(1, 1 << 16)
    while True:
        m = mahler_measure(f, err)
        e_lo, e_hi = exp_bounds(target, err)
        if m.hi < e_lo:
            return True
        if m.lo > e_hi:
            return False
        err /= 256


def _box_for_degree(k: int, T: Fraction) -> tuple[int, list[int]]:
    """(max leading coefficient, per-coefficient bounds) for degree k."""
    lc_max = floor_of_exp(k * T)
    bounds = [floor_of_product_exp(Fraction(math.comb(k, i)), k * T) for i in range(k)]
    return lc_max, bounds


def _stripe_accept(args) -> list[tuple[int, ...]]:
    """Accepted minimal polynomials (as coefficient tuples) for one
    (degree, leading coefficient) stripe of the coefficient box."""
    k, lc, bounds, T = args
    accepted = []
    for lower in itertools.product(*[range(-b, b + 1) for b in bounds]):
        coeffs = (*lower, lc)
        if math.gcd(*coeffs) != 1:
            continue
        f = IntPoly(coeffs)
        if not is_irreducible(f):
            continue
        if _mahler_below_exp(f, k * T):
            accepted.append(coeffs)
    return accepted


def enumerate_bounded(
    d: int,
    T,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> NorthcottSet:
    """Complete Northcott set {x : deg(x) <= d, h(x) < T}.

    Raises BudgetError if the coefficient box exceeds `budget` candidates.
    The result is independent of `workers` (stripes are filtered by a pure
    predicate and re-sorted canonically afterwards).
    """
    if d < 1:
        raise DomainError("degree bound must be >= 1")
    T = Fraction(T)
    if T <= 0:
        return NorthcottSet(d, T, ())
    boxes = {k: _box_for_degree(k, T) for k in range(1, d + 1)}
    total = sum(
        lc_max * math.prod(2 * b + 1 for b in bounds) for lc_max, bounds in boxes.values()
    )
    if total > budget:
        raise BudgetError(total, budget)
    tasks = [
        (k, lc, bounds, T)
        for k, (lc_max, bounds) in sorted(boxes.items())
        for lc in range(1, lc_max + 1)
    ]
    if workers > 1 and len(tasks) > 1:
        import multiprocessing

        with multiprocessing.get_context("fork").Pool(workers) as pool:
            chunks = pool.map(_stripe_accept, tasks)
    else:
        chunks = [_stripe_accept(t) for t in tasks]
    polys = sorted(
        {IntPoly(coeffs) for chunk in chunks for coeffs in chunk},
        key=lambda f: f.sort_key(),
    )
    elements = tuple(
        AlgebraicNumber(f, i) for f in polys for i in range(f.degree)
    )
    return NorthcottSet(d, T, elements)


@dataclass(frozen=True)
class BogomolovReport:
    degree_bound: int
    height_bound: Fraction
    torsion_count: int
    zero_present: bool
    nontorsion: tuple[tuple[AlgebraicNumber, HeightInterval], ...]
    min_nontorsion_height: HeightInterval | None
    min_witness: AlgebraicNumber | None


def bogomolov_scan(
    d: int,
    T,
    *,
    tol: Fraction = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> BogomolovReport:
    """Partition the Northcott set by torsion and report the smallest
    certified nonzero non-torsion height, if any."""
    ns = enumerate_bounded(d, T, budget=budget, workers=workers)
    torsion_count = 0
    zero_present = False
    nontorsion = []
    for a in ns:
        if a.is_zero:
            zero_present = True
        elif a.torsion_order() is not None:
            torsion_count += 1
        else:
            nontorsion.append((a, height(a, tol)))
    min_height = None
    witness = None
    if nontorsion:
        lo = min(h.lo for _, h in nontorsion)
        hi = min(h.hi for _, h in nontorsion)
        min_height = HeightInterval(lo, hi)
        witness = next(a for a, h in nontorsion if h.hi == hi)
    return BogomolovReport(
        degree_bound=d,
        height_bound=Fraction(T),
        torsion_count=torsion_count,
        zero_present=zero_present,
        nontorsion=tuple(nontorsion),
        min_nontorsion_height=min_height,
        min_witness=witness,
    )
