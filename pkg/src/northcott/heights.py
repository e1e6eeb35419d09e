"""Algebraic numbers and the absolute logarithmic Weil height.

An algebraic number is an irreducible canonical minimal polynomial together
with a root index under the deterministic root ordering from
:mod:`northcott.isolation`.  Heights are certified rational intervals,
never bare floats: h = (1/deg) * log M(minpoly), with the degree-one and
torsion cases handled exactly at the log-argument level.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .intervals import Box, eval_poly_box, exp_bounds, log_bounds
from .isolation import Disk, isolate_roots
from .polycore import (
    IntPoly,
    _torsion_order_unchecked,
    eliminate,
    factor,
    is_irreducible,
    poly_gcd,
)

DEFAULT_TOL = Fraction(1, 10**9)


class PoleError(DomainError):
    """The argument is a pole of the map being evaluated."""


@dataclass(frozen=True)
class HeightInterval:
    """Certified rational bounds 0 <= lo <= h <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi):
            raise DomainError(f"malformed height interval [{self.lo}, {self.hi}]")

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        return float(self.midpoint)

    @staticmethod
    def exact_zero() -> "HeightInterval":
        return HeightInterval(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class AlgebraicNumber:
    """Root number `root_index` (in canonical root order) of `minpoly`."""

    minpoly: IntPoly
    root_index: int = 0

    @staticmethod
    def from_minpoly(f: IntPoly, root_index: int = 0) -> "AlgebraicNumber":
        f = f.canonical() if not f.is_zero else f
        if f.is_zero or f.degree < 1:
            raise DomainError("minimal polynomial must have degree >= 1")
        if not is_irreducible(f):
            raise DomainError(f"{f} is not irreducible over Q")
        if not 0 <= root_index < f.degree:
            raise DomainError(f"root index {root_index} out of range for degree {f.degree}")
        return AlgebraicNumber(f, root_index)

    @staticmethod
    def from_rational(q) -> "AlgebraicNumber":
        q = Fraction(q)
        return AlgebraicNumber(IntPoly((-q.numerator, q.denominator)).canonical(), 0)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self):
        if self.degree != 1:
            return None
        return Fraction(-self.minpoly.coeffs[0], self.minpoly.coeffs[1])

    @property
    def is_zero(self) -> bool:
        return self.minpoly == IntPoly((0, 1))

    def torsion_order(self):
        """n if this number is a primitive n-th root of unity, else None."""
        return _torsion_order_unchecked(self.minpoly)

    def disk(self, tol: Fraction) -> Disk:
        return isolate_roots(self.minpoly, tol)[self.root_index]

    def conjugates(self) -> list["AlgebraicNumber"]:
        return [AlgebraicNumber(self.minpoly, i) for i in range(self.degree)]

    def inverse(self) -> "AlgebraicNumber":
        """1/alpha; exact via minimal-polynomial reversal."""
        if self.is_zero:
            raise DomainError("inverse of zero")
        rev = self.minpoly.reverse().canonical()
        if self.degree == 1:
            return AlgebraicNumber(rev, 0)
        value = algebraic_eval((IntPoly((1,)), IntPoly((0, 1))), self)
        assert value.minpoly == rev
        return value

    def sort_key(self):
        return (self.minpoly.sort_key(), self.root_index)

    def to_json(self) -> dict:
        return {"minpoly": str(self.minpoly), "root_index": self.root_index}

    @staticmethod
    def from_json(data: dict) -> "AlgebraicNumber":
        return AlgebraicNumber.from_minpoly(IntPoly.parse(data["minpoly"]), data["root_index"])

    def __str__(self):
        q = self.as_fraction()
        if q is not None:
            return str(q)
        return f"({self.minpoly})@{self.root_index}"


# ---------------------------------------------------------------------------
# Mahler measure


def _mahler_irreducible(g: IntPoly, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of M(g) for irreducible canonical g (exact where possible)."""
    if g == IntPoly((0, 1)) or _torsion_order_unchecked(g) is not None:
        return Fraction(1), Fraction(1)
    if g.degree == 1:
        m = Fraction(max(abs(g.coeffs[0]), abs(g.coeffs[1])))
        return m, m
    lead = abs(g.lead)
    t = tol / (4 * g.degree)
    while True:
        lo, hi = Fraction(lead), Fraction(lead)
        for disk in isolate_roots(g, t):
            a_lo, a_hi = disk.abs_interval()
            lo *= max(Fraction(1), a_lo)
            hi *= max(Fraction(1), a_hi)
        if hi - lo <= tol:
            return lo, hi
        t /= 16


def mahler_measure(f: IntPoly, tol: Fraction = DEFAULT_TOL) -> HeightInterval:
    """Certified enclosure of M(f) = |lc| * prod max(1, |root|), width <= tol.

    Exact (zero-width) for products of cyclotomics, x and constants.
    """
    if f.is_zero:
        raise DomainError("Mahler measure of the zero polynomial")
    tol = Fraction(tol)
    unit, parts = factor(f)
    attempt = 0
    while True:
        sub_tol = tol / (4 ** (attempt + 1) * (len(parts) + 1))
        lo, hi = Fraction(abs(unit)), Fraction(abs(unit))
        for g, mult in parts:
            g_lo, g_hi = _mahler_irreducible(g, sub_tol)
            lo *= max(Fraction(1), g_lo) ** mult
            hi *= g_hi**mult
        if hi - lo <= tol:
            return HeightInterval(lo, hi)
        attempt += 1


# ---------------------------------------------------------------------------
# Weil height


def weil_height(a: AlgebraicNumber, tol: Fraction = DEFAULT_TOL) -> HeightInterval:
    """Certified enclosure of the absolute logarithmic Weil height of `a`."""
    tol = Fraction(tol)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    if a.is_zero or a.torsion_order() is not None:
        return HeightInterval.exact_zero()
    q = a.as_fraction()
    if q is not None:
        arg = max(abs(q.numerator), abs(q.denominator))
        lo, hi = log_bounds(Fraction(arg), tol)
        return HeightInterval(max(Fraction(0), lo), hi)
    k = a.degree
    m = mahler_measure(a.minpoly, tol * k / 2)
    m_lo = max(Fraction(1), m.lo)  # M >= 1 for nonzero integer polynomials
    lo = log_bounds(m_lo, tol * k / 8)[0] / k
    hi = log_bounds(m.hi, tol * k / 8)[1] / k
    return HeightInterval(max(Fraction(0), lo), hi)


def compare_height(a: AlgebraicNumber, bound: Fraction) -> int:
    """Certified comparison of h(a) with a rational bound >= 0.

    Returns -1 (h < bound), 0 (h == bound, torsion/zero against bound 0) or
    +1 (h > bound).  Terminates because log M is never equal to a nonzero
    rational and torsion is decided symbolically.
    """
    bound = Fraction(bound)
    if bound < 0:
        return 1
    if a.is_zero or a.torsion_order() is not None:
        return 0 if bound == 0 else -1
    if bound == 0:
        return 1  # nonzero non-torsion has strictly positive height
    k = a.degree
    target = k * bound
    err = Fraction(1, 1 << 16)
    while True:
        m = mahler_measure(a.minpoly, err)
        e_lo, e_hi = exp_bounds(target, err)
        if m.lo > e_hi:
            return 1
        if m.hi < e_lo:
            return -1
        err /= 256


# ---------------------------------------------------------------------------
# Exact evaluation of rational maps at algebraic numbers


def _map_components(g) -> tuple[IntPoly, IntPoly]:
    if isinstance(g, IntPoly):
        return g, IntPoly((1,))
    if isinstance(g, tuple) and len(g) == 2:
        num, den = g
        return num, den
    num = getattr(g, "numerator", None)
    den = getattr(g, "denominator", None)
    if isinstance(num, IntPoly) and isinstance(den, IntPoly):
        return num, den
    raise TypeError("expected an IntPoly, (num, den) pair, or rational map")


def algebraic_eval(g, a: AlgebraicNumber) -> AlgebraicNumber:
    """g(a) as an AlgebraicNumber, for g a polynomial or rational map over Q.

    The candidate minimal polynomial comes from resultant elimination; the
    correct irreducible factor and root index are selected by certified
    rectangle evaluation, refining until the match is unique.
    """
    num, den = _map_components(g)
    if den.is_zero:
        raise DomainError("map denominator is zero")
    if not den.is_zero and den.degree >= 1 and poly_gcd(a.minpoly, den).degree >= 1:
        raise PoleError(f"{a} is a pole of the map")
    q = a.as_fraction()
    if q is not None:
        dval = den(q)
        if dval == 0:
            raise PoleError(f"{a} is a pole of the map")
        return AlgebraicNumber.from_rational(Fraction(num(q)) / dval)
    if num.is_zero:
        return AlgebraicNumber.from_rational(0)
    if num.degree == 0 and den.degree == 0:
        return AlgebraicNumber.from_rational(Fraction(num.coeffs[0], den.coeffs[0]))
    candidates_poly = eliminate(a.minpoly, num, den)
    _, parts = factor(candidates_poly)
    candidate_factors = [h for h, _ in parts if h.degree >= 1]
    tol = Fraction(1, 1 << 16)
    while True:
        disk = a.disk(tol)
        box = Box.from_disk(disk.re, disk.im, disk.radius)
        den_box = eval_poly_box(den.coeffs, box)
        if den_box.contains_zero():
            tol /= 16
            continue
        value_box = eval_poly_box(num.coeffs, box) / den_box
        hits = []
        for h in candidate_factors:
            for idx, root_disk in enumerate(isolate_roots(h, tol)):
                rect = Box.from_disk(root_disk.re, root_disk.im, root_disk.radius)
                if rect.intersects(value_box):
                    hits.append((h, idx))
            if len(hits) > 1:
                break
        if len(hits) == 1:
            h, idx = hits[0]
            return AlgebraicNumber(h, idx)
        tol /= 16


@functools.lru_cache(maxsize=65536)
def _cached_height(a: AlgebraicNumber, tol: Fraction) -> HeightInterval:
    return weil_height(a, tol)


def height(a: AlgebraicNumber, tol: Fraction = DEFAULT_TOL) -> HeightInterval:
    """Memoized weil_height; values are immutable so sharing is safe."""
    return _cached_height(a, Fraction(tol))
