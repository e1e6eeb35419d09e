"""Certified complex root isolation.

mpmath's polynomial solver is used only to *suggest* root locations; every
certificate is then established in exact rational arithmetic:

  * around each suggested (rationalized) center c we take the radius bound
    r = n*|f(c)/f'(c)|, which provably contains at least one root of f;
  * n pairwise strictly disjoint such disks for a squarefree degree-n
    polynomial therefore each contain exactly one root.

Failing certificates restart at doubled working precision, so results depend
only on (polynomial, tolerance) and are deterministic.

The canonical root ordering is by real part with imaginary part as the
tie-break.  Real-part ties cannot be resolved by refinement alone, so ties
are decided exactly: complex-conjugate pairs are certified by disk
conjugation, and the rare remaining case (equal real parts of non-conjugate
roots) falls back to locating both real parts among the isolated roots of
the sum polynomial Res_y(f(y), f(x-y)).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError
from .intervals import _bits_for, ceil_bits
from .polycore import IntPoly, is_squarefree, real_part_candidates

_BASE_BITS = 20  # spec'd starting radius 2^-20, scaled by a root bound


@dataclass(frozen=True)
class Disk:
    """Closed disk with rational center and radius, certified to contain
    exactly one root of the polynomial it was isolated for."""

    re: Fraction
    im: Fraction
    radius: Fraction

    def conjugate(self) -> "Disk":
        return Disk(self.re, -self.im, self.radius)

    def strictly_disjoint(self, other: "Disk") -> bool:
        dre = self.re - other.re
        dim = self.im - other.im
        rr = self.radius + other.radius
        return dre * dre + dim * dim > rr * rr

    def intersects(self, other: "Disk") -> bool:
        return not self.strictly_disjoint(other)

    def re_interval(self) -> tuple[Fraction, Fraction]:
        return self.re - self.radius, self.re + self.radius

    def im_interval(self) -> tuple[Fraction, Fraction]:
        return self.im - self.radius, self.im + self.radius

    def abs_interval(self) -> tuple[Fraction, Fraction]:
        """Certified bounds on |root| given the root lies in this disk."""
        from .intervals import sqrt_bounds

        c2 = self.re * self.re + self.im * self.im
        err = max(self.radius, Fraction(1, 1 << 40))
        lo, hi = sqrt_bounds(c2, err)
        return max(Fraction(0), lo - self.radius), hi + self.radius


def _mpf_to_scaled_int(x, bits: int) -> int:
    """round(x * 2^bits) for an mpmath float, exactly."""
    sign, man, exp, bc = x._mpf_
    if man == 0:
        if exp == 0:
            return 0
        raise ArithmeticError("non-finite value from mpmath")
    shift = exp + bits
    value = man << shift if shift >= 0 else (man + (1 << (-shift - 1))) >> -shift
    return -value if sign else value


def _eval_scaled(coeffs, zre: int, zim: int, bits: int) -> tuple[int, int]:
    """2^(bits*deg) * f(z/2^bits) over Gaussian integers, exactly."""
    d = len(coeffs) - 1
    ar, ai = coeffs[d], 0
    for k in range(d - 1, -1, -1):
        ar, ai = ar * zre - ai * zim + (coeffs[k] << (bits * (d - k))), ar * zim + ai * zre
    return ar, ai


def _sqrt_hi_rel(q: Fraction, relbits: int = 16) -> Fraction:
    """Upper bound on sqrt(q) with ~2^-relbits relative slack."""
    if q == 0:
        return Fraction(0)
    import math

    a, b = q.numerator, q.denominator
    cur = (a * b).bit_length() // 2
    g = max(0, relbits - cur + 1)
    s = math.isqrt((a * b) << (2 * g))
    return Fraction(s + 1, b << g)


def root_bound(f: IntPoly) -> Fraction:
    """Cauchy bound: all complex roots have |root| <= 1 + max|a_i|/|lc|."""
    lead = abs(f.lead)
    top = max(abs(c) for c in f.coeffs)
    return 1 + Fraction(top, lead)


def _attempt(f: IntPoly, tol: Fraction, dps: int, bits: int):
    n = f.degree
    deriv = f.derivative()
    try:
        with mpmath.workdps(dps):
            approx = mpmath.polyroots(
                [int(c) for c in reversed(f.coeffs)], maxsteps=60 + dps, extraprec=30
            )
    except Exception:  # noqa: BLE001 - solver failures just raise the ladder
        return None
    den = 1 << bits
    rad_bits = bits + 16
    disks = []
    for z in approx:
        z = mpmath.mpc(z)
        zre = _mpf_to_scaled_int(z.real, bits)
        zim = _mpf_to_scaled_int(z.imag, bits)
        fr, fi = _eval_scaled(f.coeffs, zre, zim, bits)
        gr, gi = _eval_scaled(deriv.coeffs, zre, zim, bits)
        d2 = gr * gr + gi * gi
        if d2 == 0:
            return None
        # |f(c)|^2 / |f'(c)|^2 with the scale factors 2^(2*bits*deg) restored
        ratio = Fraction(fr * fr + fi * fi, d2 << (2 * bits))
        rad = ceil_bits(n * _sqrt_hi_rel(ratio), rad_bits)
        if rad > tol:
            return None
        disks.append(Disk(Fraction(zre, den), Fraction(zim, den), rad))
    for i in range(n):
        for j in range(i + 1, n):
            if not disks[i].strictly_disjoint(disks[j]):
                return None
    return tuple(disks)


@functools.lru_cache(maxsize=8192)
def _isolate_unordered(f: IntPoly, tol: Fraction) -> tuple[Disk, ...]:
    n = f.degree
    if n == 1:
        root = Fraction(-f.coeffs[0], f.coeffs[1])
        return (Disk(root, Fraction(0), Fraction(0)),)
    coeff_bits = max(abs(c) for c in f.coeffs).bit_length()
    bits = max(40, _bits_for(tol) + 16)
    dps = max(20, (bits * 302) // 1000 + 8, 10 + (3 * coeff_bits) // 10)
    limit = max(dps, 30) * (1 << 14)
    while dps <= limit:
        disks = _attempt(f, tol, dps, bits)
        if disks is not None:
            return disks
        dps *= 2
        bits = max(bits, (dps * 10) // 3)
    raise RuntimeError(f"root isolation did not certify for {f} at tol {tol}")


@functools.lru_cache(maxsize=8192)
def _base(f: IntPoly) -> tuple[Disk, ...]:
    return _isolate_unordered(f, root_bound(f) / (1 << _BASE_BITS))


@functools.lru_cache(maxsize=8192)
def _aligned(f: IntPoly, tol: Fraction) -> tuple[Disk, ...]:
    """Disks at tolerance <= tol, indexed consistently with _base(f)."""
    base = _base(f)
    t = min(tol, root_bound(f) / (1 << _BASE_BITS))
    while True:
        fine = _isolate_unordered(f, t)
        assign = []
        ok = True
        for d in fine:
            hits = [k for k, b in enumerate(base) if d.intersects(b)]
            if len(hits) != 1:
                ok = False
                break
            assign.append(hits[0])
        if ok and len(set(assign)) == len(base):
            out: list[Disk | None] = [None] * len(base)
            for d, k in zip(fine, assign):
                out[k] = d
            return tuple(out)  # type: ignore[arg-type]
        t /= 16


def _conjugate_partner(f: IntPoly, idx: int, level: Fraction):
    """Base index j with root_j == conj(root_idx), or None if undecided yet."""
    disks = _aligned(f, level)
    cd = disks[idx].conjugate()
    hits = [k for k, d in enumerate(disks) if cd.intersects(d)]
    return hits[0] if len(hits) == 1 else None


def _overlap(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> bool:
    return not (a[1] < b[0] or b[1] < a[0])


def _rho_slot(f: IntPoly, idx: int, level: Fraction, rho: IntPoly, rho_tol: Fraction):
    """Index of the unique rho-root rectangle meeting [2*Re(root_idx)], or None."""
    d = _aligned(f, level)[idx]
    lo, hi = d.re_interval()
    window = (2 * lo, 2 * hi)
    hits = []
    for k, rd in enumerate(_isolate_unordered(rho, rho_tol)):
        if abs(rd.im) <= rd.radius and _overlap(window, rd.re_interval()):
            hits.append(k)
    return hits[0] if len(hits) == 1 else None


def _compare_roots(f: IntPoly, i: int, j: int) -> int:
    """-1/+1 by (Re, Im) lexicographic order of base roots i and j."""
    level = root_bound(f) / (1 << _BASE_BITS)
    rounds = 0
    re_equal = False
    while True:
        disks = _aligned(f, level)
        if not re_equal:
            ri, rj = disks[i].re_interval(), disks[j].re_interval()
            if ri[1] < rj[0]:
                return -1
            if rj[1] < ri[0]:
                return 1
            pi = _conjugate_partner(f, i, level)
            if pi == j:
                re_equal = True  # conjugate pair: real parts exactly equal
            elif rounds >= 3:
                rho = real_part_candidates(f)
                rho_tol = root_bound(rho) / (1 << _BASE_BITS)
                while True:
                    si = _rho_slot(f, i, level, rho, rho_tol)
                    sj = _rho_slot(f, j, level, rho, rho_tol)
                    if si is not None and sj is not None:
                        if si == sj:
                            re_equal = True
                            break
                        rd_i = _isolate_unordered(rho, rho_tol)[si]
                        rd_j = _isolate_unordered(rho, rho_tol)[sj]
                        return -1 if rd_i.re < rd_j.re else 1
                    rho_tol /= 16
                    level /= 16
        if re_equal:
            ii, ij = disks[i].im_interval(), disks[j].im_interval()
            ci = _conjugate_partner(f, i, level)
            cj = _conjugate_partner(f, j, level)
            if ci == i:
                ii = (Fraction(0), Fraction(0))  # certified real root
            if cj == j:
                ij = (Fraction(0), Fraction(0))
            if ii[1] < ij[0]:
                return -1
            if ij[1] < ii[0]:
                return 1
        level /= 16
        rounds += 1


@functools.lru_cache(maxsize=8192)
def _canonical_order(f: IntPoly) -> tuple[int, ...]:
    n = f.degree
    if n == 1:
        return (0,)
    order = list(range(n))
    # insertion sort with the certified comparator
    for k in range(1, n):
        m = k
        while m > 0 and _compare_roots(f, order[m], order[m - 1]) < 0:
            order[m], order[m - 1] = order[m - 1], order[m]
            m -= 1
    return tuple(order)


def isolate_roots(f: IntPoly, tol: Fraction) -> list[Disk]:
    """Certified pairwise-disjoint disks of radius <= tol, one per root,
    deterministically ordered by (Re, Im).  Requires a squarefree input of
    degree >= 1."""
    tol = Fraction(tol)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    if f.is_zero or f.degree < 1:
        raise DomainError("root isolation requires degree >= 1")
    if not is_squarefree(f):
        raise DomainError("root isolation requires a squarefree polynomial")
    disks = _aligned(f, tol)
    return [disks[k] for k in _canonical_order(f)]
