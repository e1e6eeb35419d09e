"""Exact arithmetic on integer polynomials.

Polynomials are immutable dense coefficient tuples over Python ints, index i
holding the coefficient of x^i.  The zero polynomial is the empty tuple and is
rejected wherever a degree is required.  Everything here is exact: resultants
via the subresultant PRS, discriminants, gcds, squarefree decomposition,
factorization over Q (small degrees by direct splitting, larger degrees
delegated to sympy's exact Zassenhaus/van Hoeij implementation), cyclotomic
polynomials, and the resultant-based elimination used to push algebraic
numbers through rational maps.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .parsing import format_poly_coeffs, parse_poly_coeffs


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; ``coeffs[i]`` multiplies x^i, () is zero."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @staticmethod
    def from_coeffs(coeffs) -> "IntPoly":
        return IntPoly(tuple(int(c) for c in coeffs))

    @staticmethod
    def constant(c: int) -> "IntPoly":
        return IntPoly((int(c),) if c else ())

    @staticmethod
    def x() -> "IntPoly":
        return IntPoly((0, 1))

    @staticmethod
    def parse(text: str) -> "IntPoly":
        return IntPoly(parse_poly_coeffs(text))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise DomainError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(_trim(tuple(self[i] + other[i] for i in range(n))))

    def __sub__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(_trim(tuple(self[i] - other[i] for i in range(n))))

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPoly(())
            return IntPoly(tuple(c * other for c in self.coeffs))
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(_trim(tuple(out)))

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        out = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, value):
        """Evaluate by Horner; exact over int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(_trim(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1)))

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPoly":
        """Content removed, sign of the leading coefficient kept."""
        if not self.coeffs:
            return self
        c = self.content()
        return IntPoly(tuple(a // c for a in self.coeffs))

    def canonical(self) -> "IntPoly":
        """Primitive with positive leading coefficient (minimal-poly form)."""
        p = self.primitive()
        if p.coeffs and p.coeffs[-1] < 0:
            p = -p
        return p

    @property
    def is_canonical(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] > 0 and self.content() == 1

    def reverse(self) -> "IntPoly":
        """x^deg * f(1/x); drops a root at zero if present."""
        if not self.coeffs:
            return self
        return IntPoly(_trim(tuple(reversed(self.coeffs))))

    def compose(self, inner: "IntPoly") -> "IntPoly":
        acc = IntPoly(())
        for c in reversed(self.coeffs):
            acc = acc * inner + IntPoly.constant(c)
        return acc

    def num_terms(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def sort_key(self):
        """Canonical ordering: degree, then ascending-index coefficient lex."""
        return (len(self.coeffs), self.coeffs)

    def __str__(self):
        return format_poly_coeffs(self.coeffs)


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _coerce(value) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int):
        return IntPoly.constant(value)
    raise TypeError(f"cannot coerce {value!r} to IntPoly")


def divmod_exact(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f/g in Z[x]; raises DomainError if the division is not exact."""
    if g.is_zero:
        raise DomainError("division by the zero polynomial")
    if f.is_zero:
        return f
    rem = list(f.coeffs)
    dg = g.degree
    lg = g.lead
    quot = [0] * (len(rem) - dg) if len(rem) > dg else []
    for k in range(len(rem) - dg - 1, -1, -1):
        top = rem[k + dg]
        if top % lg:
            raise DomainError("inexact polynomial division")
        q = top // lg
        quot[k] = q
        if q:
            for i, c in enumerate(g.coeffs):
                rem[k + i] -= q * c
    if any(rem):
        raise DomainError("inexact polynomial division")
    return IntPoly(_trim(tuple(quot)))


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, all over Z."""
    da, db = a.degree, b.degree
    lb = b.lead
    r = list(a.coeffs)
    e = da - db + 1
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db or not r:
            break
        top = r[-1]
        r = [lb * c for c in r]
        shift = len(r) - 1 - db
        for i, c in enumerate(b.coeffs):
            r[shift + i] -= top * c
        r.pop()
        e -= 1
    scale = lb**e if e > 0 else 1
    return IntPoly(_trim(tuple(c * scale for c in r)))


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f.

    Subresultant PRS (Cohen, Algorithm 3.3.7); exact over Z.
    """
    if f.is_zero or g.is_zero:
        raise DomainError("resultant of the zero polynomial")
    a_poly, b_poly = f, g
    sign = 1
    if a_poly.degree < b_poly.degree:
        a_poly, b_poly = b_poly, a_poly
        if (a_poly.degree * b_poly.degree) % 2 == 1:
            sign = -sign
    if b_poly.degree == 0:
        return sign * b_poly.lead ** a_poly.degree
    ca, cb = a_poly.content(), b_poly.content()
    a_poly = a_poly.primitive()
    b_poly = b_poly.primitive()
    scale = ca ** b_poly.degree * cb ** a_poly.degree
    g_val, h_val = 1, 1
    while True:
        d, e = a_poly.degree, b_poly.degree
        delta = d - e
        if d % 2 == 1 and e % 2 == 1:
            sign = -sign
        rem = _prem(a_poly, b_poly)
        if rem.is_zero:
            return 0
        a_poly = b_poly
        b_poly = IntPoly(tuple(_exact_int(c, g_val * h_val**delta) for c in rem.coeffs))
        g_val = a_poly.lead
        if delta > 0:
            h_val = _exact_int(g_val**delta, h_val ** (delta - 1))
        if b_poly.degree == 0:
            break
    d = a_poly.degree
    h_val = _exact_int(b_poly.lead**d, h_val ** (d - 1)) if d >= 1 else h_val
    return sign * scale * h_val


def _exact_int(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise DomainError("internal: inexact integer division in PRS")
    return q


def discriminant(f: IntPoly) -> int:
    """(-1)^(d(d-1)/2) * Res(f, f') / lc(f); linear polynomials give 1."""
    if f.is_zero or f.degree < 1:
        raise DomainError("discriminant requires degree >= 1")
    d = f.degree
    if d == 1:
        return 1
    res = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return _exact_int(sign * res, f.lead)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Gcd in Z[x]: integer gcd of contents times the primitive gcd, lc > 0."""
    if f.is_zero:
        return g.canonical() if not g.is_zero else g
    if g.is_zero:
        return f.canonical()
    cont = math.gcd(f.content(), g.content())
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = _prem(a, b)
        a, b = b, (r.primitive() if not r.is_zero else r)
    res = a.canonical()
    return res * cont if cont != 1 else res


def is_squarefree(f: IntPoly) -> bool:
    if f.is_zero:
        return False
    if f.degree == 0:
        return True
    return poly_gcd(f, f.derivative()).degree == 0


def squarefree_decomposition(f: IntPoly) -> tuple[int, list[tuple[IntPoly, int]]]:
    """Yun's algorithm over Z: f = unit * prod g_i^i with g_i canonical squarefree."""
    if f.is_zero:
        raise DomainError("squarefree decomposition of zero")
    unit = f.content() * (1 if f.lead > 0 else -1)
    w = f.canonical()
    if w.degree == 0:
        return unit, []
    deriv = w.derivative()
    a = poly_gcd(w, deriv)
    if a.degree == 0:
        return unit, [(w, 1)]
    b = divmod_exact(w, a)
    c = divmod_exact(deriv, a)
    d = c - b.derivative()
    out: list[tuple[IntPoly, int]] = []
    i = 1
    while b.degree >= 1:
        g = poly_gcd(b, d)
        if g.degree >= 1:
            out.append((g.canonical(), i))
        b = divmod_exact(b, g)
        c = divmod_exact(d, g)
        d = c - b.derivative()
        i += 1
    return unit, out


# ---------------------------------------------------------------------------
# Factorization over Q


def _divisors_of(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    if n < 10**6:
        small, large = [], []
        i = 1
        while i * i <= n:
            if n % i == 0:
                small.append(i)
                if i != n // i:
                    large.append(n // i)
            i += 1
        return small + large[::-1]
    import sympy

    return list(sympy.divisors(n))


_LINEAR_FILTER_PRIMES = (5, 7, 11, 13, 17)


def _has_root_mod(f: IntPoly, p: int) -> bool:
    coeffs = [c % p for c in f.coeffs]
    for v in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * v + c) % p
        if acc == 0:
            return True
    return False


def _rational_roots(f: IntPoly) -> list[Fraction]:
    """Distinct rational roots of a primitive polynomial with f(0) != 0."""
    # A root mod p is necessary for a rational root; cheap irreducibility filter.
    for p in _LINEAR_FILTER_PRIMES:
        if f.lead % p != 0 and not _has_root_mod(f, p):
            return []
    roots = []
    a0, lead = f.coeffs[0], f.lead
    for q in _divisors_of(lead):
        for p in _divisors_of(a0):
            if math.gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if f(cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


def _factor_squarefree_small(f: IntPoly) -> list[IntPoly]:
    """Split a canonical squarefree polynomial of degree <= 3."""
    factors = []
    rest = f
    if rest.coeffs[0] == 0:
        k = next(i for i, c in enumerate(rest.coeffs) if c)
        factors.extend([IntPoly.x()] * k)  # squarefree input: k == 1
        rest = IntPoly(rest.coeffs[k:])
    if rest.degree >= 1:
        for root in _rational_roots(rest):
            lin = IntPoly((-root.numerator, root.denominator)).canonical()
            factors.append(lin)
            rest = divmod_exact(rest * root.denominator ** rest.degree, lin).canonical()
    if rest.degree >= 1:
        # degree 2 or 3 with no rational root is irreducible over Q
        factors.append(rest.canonical())
    return factors


def _factor_squarefree_sympy(f: IntPoly) -> list[IntPoly]:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(f.coeffs)), x, domain=sympy.ZZ)
    _, parts = poly.factor_list()
    out = []
    for fac, mult in parts:
        g = IntPoly(tuple(int(c) for c in reversed(fac.all_coeffs()))).canonical()
        out.extend([g] * mult)
    return out


def factor(f: IntPoly) -> tuple[int, list[tuple[IntPoly, int]]]:
    """Full factorization over Q: signed integer content plus irreducible
    canonical factors with multiplicities, deterministically ordered."""
    if f.is_zero:
        raise DomainError("factorization of the zero polynomial")
    unit, squarefree = squarefree_decomposition(f)
    counts: dict[IntPoly, int] = {}
    for part, mult in squarefree:
        pieces = (
            _factor_squarefree_small(part)
            if part.degree <= 3
            else _factor_squarefree_sympy(part)
        )
        for piece in pieces:
            counts[piece] = counts.get(piece, 0) + mult
    ordered = sorted(counts.items(), key=lambda kv: kv[0].sort_key())
    return unit, ordered


def is_irreducible(f: IntPoly) -> bool:
    if f.is_zero or f.degree < 1:
        return False
    unit, parts = factor(f)
    return abs(unit) == 1 and len(parts) == 1 and parts[0][1] == 1


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and torsion detection


def _totient(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, computed by divisor arithmetic."""
    if n < 1:
        raise DomainError("cyclotomic index must be positive")
    poly = IntPoly((-1,) + (0,) * (n - 1) + (1,))
    for d in range(1, n):
        if n % d == 0:
            poly = divmod_exact(poly, cyclotomic(d))
    return poly


def _torsion_order_unchecked(f: IntPoly):
    """Order n with f == Phi_n, or None; f assumed irreducible canonical."""
    k = len(f.coeffs) - 1
    if k < 1 or f.coeffs[-1] != 1:
        return None
    bound = 2 * k * k + 2
    for n in range(1, bound + 1):
        if _totient(n) == k and cyclotomic(n) == f:
            return n
    return None


def root_of_unity_order(f: IntPoly):
    """n such that f is the n-th cyclotomic polynomial, else None.

    Raises DomainError unless f is irreducible in canonical form.
    """
    if f.is_zero or not f.is_canonical or not is_irreducible(f):
        raise DomainError("root_of_unity_order requires an irreducible canonical polynomial")
    return _torsion_order_unchecked(f)


# ---------------------------------------------------------------------------
# Resultant elimination for values of rational maps at algebraic numbers


def _interpolate_integer(points: list[tuple[int, int]]) -> IntPoly:
    """Lagrange interpolation through integer points; result must be in Z[x]."""
    n = len(points)
    acc = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] -= c * xj
                new[k + 1] += c
            basis = new
            denom *= xi - xj
        w = Fraction(yi) / denom
        for k, c in enumerate(basis):
            acc[k] += w * c
    coeffs = []
    for c in acc:
        if c.denominator != 1:
            raise DomainError("internal: interpolated resultant is not integral")
        coeffs.append(c.numerator)
    return IntPoly(_trim(tuple(coeffs)))


def eliminate(minpoly: IntPoly, num: IntPoly, den: IntPoly) -> IntPoly:
    """Res_y(minpoly(y), x*den(y) - num(y)) as a primitive polynomial in x.

    Vanishes at num(alpha)/den(alpha) for every root alpha of minpoly that is
    not a pole.  Computed by specialization at integer points and exact
    interpolation; specializations that would drop the y-degree are skipped.
    """
    if minpoly.is_zero or minpoly.degree < 1:
        raise DomainError("eliminate requires a nonconstant minimal polynomial")
    if num.is_zero or den.is_zero:
        raise DomainError("eliminate requires nonzero map components")
    n = minpoly.degree
    big = max(num.degree, den.degree)
    q_top, p_top = den[big], num[big]
    points: list[tuple[int, int]] = []
    t = 0
    while len(points) < n + 1:
        for cand in ((t, -t) if t else (0,)):
            if len(points) == n + 1:
                break
            if q_top != 0 and q_top * cand == p_top:
                continue  # y-degree would drop at this specialization
            spec = den * cand - num
            points.append((cand, resultant(minpoly, spec)))
        t += 1
    return _interpolate_integer(points).canonical()


@functools.lru_cache(maxsize=256)
def real_part_candidates(f: IntPoly) -> IntPoly:
    """Squarefree polynomial whose roots include 2*Re(alpha) for every root
    alpha of f (roots of Res_y(f(y), f(x - y)))."""
    if f.is_zero or f.degree < 1:
        raise DomainError("need a nonconstant polynomial")
    n = f.degree
    points = []
    for t in range(n * n + 1):
        inner = IntPoly((t, -1))  # y -> t - y
        points.append((t, resultant(f, f.compose(inner))))
    full = _interpolate_integer(points)
    sqf = divmod_exact(full, poly_gcd(full, full.derivative()))
    return sqf.canonical()
