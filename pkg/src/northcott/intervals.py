"""Certified rational enclosures built on Fraction arithmetic.

Everything returns (lo, hi) pairs of exact rationals that provably bracket
the target real; widths are driven under the requested error by construction
(square roots, integer r-th roots) or by a deterministic precision ladder
(log, exp).  A small complex-rectangle type supports certified evaluation of
rational maps on root enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def floor_bits(q: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(q * (1 << bits)), 1 << bits)


def ceil_bits(q: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(q * (1 << bits)), 1 << bits)


def _bits_for(err: Fraction) -> int:
    """Smallest convenient g with 2^-g <= err."""
    if err <= 0:
        raise DomainError("error bound must be positive")
    return max(1, (err.denominator // err.numerator).bit_length() + 1)


def sqrt_bounds(q: Fraction, err: Fraction) -> tuple[Fraction, Fraction]:
    """lo <= sqrt(q) <= hi with hi - lo <= err, exact rationals."""
    if q < 0:
        raise DomainError("sqrt of a negative rational")
    if q == 0:
        return _ZERO, _ZERO
    a, b = q.numerator, q.denominator
    # width is 1/(b*2^g); make it <= err
    need = Fraction(1, b) / err
    g = max(1, (need.numerator // need.denominator).bit_length() + 1)
    s = math.isqrt(a * b << (2 * g))
    den = b << g
    return Fraction(s, den), Fraction(s + 1, den)


def sqrt_lo(q: Fraction, err: Fraction) -> Fraction:
    return sqrt_bounds(q, err)[0]


def sqrt_hi(q: Fraction, err: Fraction) -> Fraction:
    return sqrt_bounds(q, err)[1]


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, exact."""
    if n < 0 or k < 1:
        raise DomainError("iroot needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def nth_root_bounds(n: int, r: int, err: Fraction) -> tuple[Fraction, Fraction]:
    """lo <= n^(1/r) <= hi for an integer n >= 0, width <= err."""
    if n < 0:
        raise DomainError("nth_root_bounds needs n >= 0")
    g = _bits_for(err)
    s = iroot(n << (r * g), r)
    return Fraction(s, 1 << g), Fraction(s + 1, 1 << g)


# ---------------------------------------------------------------------------
# Logarithm: ln(q) = k*ln2 + 2*atanh((m-1)/(m+1)) with m reduced to [3/4, 3/2)


def _atanh_times_two(t: Fraction, err: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of 2*atanh(t) for |t| < 1/2, via the odd power series."""
    assert abs(t) < Fraction(1, 2)
    t2 = t * t
    term = t
    acc = Fraction(0)
    j = 0
    while True:
        acc += term / (2 * j + 1)
        # remainder after term j: 2*|t|^(2j+3) / ((2j+3)(1-t^2))
        rem = 2 * abs(term * t2) / ((2 * j + 3) * (1 - t2))
        if rem <= err / 2:
            break
        term *= t2
        j += 1
    lo, hi = 2 * acc - rem, 2 * acc + rem
    return lo, hi


_LN2_CACHE: dict[int, tuple[Fraction, Fraction]] = {}


def ln2_bounds(err: Fraction) -> tuple[Fraction, Fraction]:
    bits = _bits_for(err)
    key = 1 << max(bits, 32).bit_length()  # quantize ladder levels
    if key not in _LN2_CACHE:
        _LN2_CACHE[key] = _atanh_times_two(Fraction(1, 3), Fraction(1, 1 << key))
    return _LN2_CACHE[key]


def log_bounds(q: Fraction, err: Fraction) -> tuple[Fraction, Fraction]:
    """lo <= ln(q) <= hi for rational q > 0, with hi - lo <= err."""
    if q <= 0:
        raise DomainError("log of a nonpositive rational")
    # power-of-two reduction into [3/4, 3/2)
    k = q.numerator.bit_length() - q.denominator.bit_length()
    m = q / Fraction(2) ** k
    while m >= Fraction(3, 2):
        m /= 2
        k += 1
    while m < Fraction(3, 4):
        m *= 2
        k -= 1
    grid = _bits_for(err) + 8
    m_lo, m_hi = floor_bits(m, grid), ceil_bits(m, grid)
    piece = err / 4
    s_lo = _atanh_times_two((m_lo - 1) / (m_lo + 1), piece)[0]
    s_hi = _atanh_times_two((m_hi - 1) / (m_hi + 1), piece)[1]
    if k == 0:
        return s_lo, s_hi
    l2_lo, l2_hi = ln2_bounds(piece / abs(k))
    if k > 0:
        return k * l2_lo + s_lo, k * l2_hi + s_hi
    return k * l2_hi + s_lo, k * l2_lo + s_hi


# ---------------------------------------------------------------------------
# Exponential


def _exp_series(t: Fraction, err: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of exp(t) for |t| <= 1/2."""
    assert abs(t) <= Fraction(1, 2)
    acc = Fraction(1)
    term = Fraction(1)
    n = 0
    while True:
        n += 1
        term *= Fraction(t, n)
        acc += term
        rem = 2 * abs(term * t) / (n + 1)  # tail <= |t|^(n+1)/(n+1)! * 1/(1-|t|)
        if rem <= err:
            break
    return acc - rem, acc + rem


def exp_bounds(x: Fraction, err: Fraction) -> tuple[Fraction, Fraction]:
    """lo <= exp(x) <= hi with hi - lo <= err; lo > 0."""
    halvings = 0
    t = x
    while abs(t) > Fraction(1, 2):
        t /= 2
        halvings += 1
    bits = _bits_for(err) + 8
    while True:
        lo, hi = _exp_series(t, Fraction(1, 1 << bits))
        lo = max(lo, Fraction(1, 1 << bits))
        for _ in range(halvings):
            lo, hi = lo * lo, hi * hi
            lo, hi = floor_bits(lo, bits), ceil_bits(hi, bits)
        if hi - lo <= err and lo > 0:
            return lo, hi
        bits *= 2


def floor_of_exp(x: Fraction) -> int:
    """floor(exp(x)); decidable because exp of a nonzero rational is irrational."""
    if x == 0:
        return 1
    err = Fraction(1, 4)
    while True:
        lo, hi = exp_bounds(x, err)
        if math.floor(lo) == math.floor(hi):
            return math.floor(lo)
        err /= 16


def floor_of_product_exp(c: Fraction, x: Fraction) -> int:
    """floor(c * exp(x)) for rational c > 0; decidable as above for x != 0."""
    if x == 0:
        return math.floor(c)
    err = Fraction(1, 4)
    while True:
        lo, hi = exp_bounds(x, err)
        if math.floor(c * lo) == math.floor(c * hi):
            return math.floor(c * lo)
        err /= 16


# ---------------------------------------------------------------------------
# Complex rectangles


def _imul(a_lo, a_hi, b_lo, b_hi):
    vals = (a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi)
    return min(vals), max(vals)


@dataclass(frozen=True)
class Box:
    """Axis-aligned complex rectangle with exact rational corners."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @staticmethod
    def from_rational(q) -> "Box":
        q = Fraction(q)
        return Box(q, q, _ZERO, _ZERO)

    @staticmethod
    def from_disk(re: Fraction, im: Fraction, rad: Fraction) -> "Box":
        return Box(re - rad, re + rad, im - rad, im + rad)

    def __add__(self, other: "Box") -> "Box":
        return Box(
            self.re_lo + other.re_lo,
            self.re_hi + other.re_hi,
            self.im_lo + other.im_lo,
            self.im_hi + other.im_hi,
        )

    def __sub__(self, other: "Box") -> "Box":
        return Box(
            self.re_lo - other.re_hi,
            self.re_hi - other.re_lo,
            self.im_lo - other.im_hi,
            self.im_hi - other.im_lo,
        )

    def __mul__(self, other: "Box") -> "Box":
        ac_lo, ac_hi = _imul(self.re_lo, self.re_hi, other.re_lo, other.re_hi)
        bd_lo, bd_hi = _imul(self.im_lo, self.im_hi, other.im_lo, other.im_hi)
        ad_lo, ad_hi = _imul(self.re_lo, self.re_hi, other.im_lo, other.im_hi)
        bc_lo, bc_hi = _imul(self.im_lo, self.im_hi, other.re_lo, other.re_hi)
        return Box(ac_lo - bd_hi, ac_hi - bd_lo, ad_lo + bc_lo, ad_hi + bc_hi)

    def contains_zero(self) -> bool:
        return self.re_lo <= 0 <= self.re_hi and self.im_lo <= 0 <= self.im_hi

    def reciprocal(self) -> "Box":
        if self.contains_zero():
            raise DomainError("reciprocal of a rectangle containing zero")
        r2_lo, r2_hi = _imul(self.re_lo, self.re_hi, self.re_lo, self.re_hi)
        i2_lo, i2_hi = _imul(self.im_lo, self.im_hi, self.im_lo, self.im_hi)
        if self.re_lo <= 0 <= self.re_hi:
            r2_lo = _ZERO
        if self.im_lo <= 0 <= self.im_hi:
            i2_lo = _ZERO
        d_lo, d_hi = r2_lo + i2_lo, r2_hi + i2_hi
        inv_lo, inv_hi = 1 / d_hi, 1 / d_lo
        re_lo, re_hi = _imul(self.re_lo, self.re_hi, inv_lo, inv_hi)
        im_lo, im_hi = _imul(-self.im_hi, -self.im_lo, inv_lo, inv_hi)
        return Box(re_lo, re_hi, im_lo, im_hi)

    def __truediv__(self, other: "Box") -> "Box":
        return self * other.reciprocal()

    def intersects(self, other: "Box") -> bool:
        return not (
            self.re_hi < other.re_lo
            or other.re_hi < self.re_lo
            or self.im_hi < other.im_lo
            or other.im_hi < self.im_lo
        )


def eval_poly_box(coeffs, box: Box) -> Box:
    """Horner evaluation of an integer polynomial over a rectangle."""
    acc = Box.from_rational(0)
    for c in reversed(coeffs):
        acc = acc * box + Box.from_rational(c)
    return acc
