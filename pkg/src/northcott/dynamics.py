"""Single-variable arithmetic dynamics over Q.

Height-change constants come from the elimination identity for the
homogenized map components F, G (degree d, resultant R != 0): integer
cofactor forms A, B of degree d-1 with

    A1*F + B1*G = R*X^(2d-1),      A2*F + B2*G = R*Y^(2d-1)

are solved for exactly; summing the resulting place-by-place inequalities
against the product formula yields the valid (not optimal) constants

    h(f(x)) >= d*h(x) - log(2*d*H)      H = max |cofactor coefficient|,
    h(f(x)) <= d*h(x) + log((d+1)*H')   H' = max |coefficient of F, G|.

Both are returned as certified rational upper bounds on the logs, which
keeps every downstream threshold rational and hence decidable against
heights (log of an algebraic number never equals a nonzero rational).
Monomials +-x^d and +-1/x^d satisfy h(f(x)) = d*h(x) exactly and return 0.

The preperiodicity decision iterates exact evaluation: escape is declared
once a certified height exceeds twice the lower constant (heights then grow
by a factor >= 3/2 forever), revisiting a previously seen value decides
preperiodicity, and the reachable set below the threshold is a finite
Northcott set, so the procedure terminates.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .enumeration import enumerate_bounded
from .errors import DomainError
from .heights import (
    AlgebraicNumber,
    HeightInterval,
    PoleError,
    algebraic_eval,
    compare_height,
    height,
)
from .intervals import log_bounds
from .parsing import format_poly_coeffs, parse_map_coeffs
from .polycore import IntPoly, divmod_exact, is_irreducible, poly_gcd

_CONSTANT_LOG_TOL = Fraction(1, 1 << 20)
DEFAULT_EPSILON = Fraction(1, 10**9)


@dataclass(frozen=True)
class RationalMap:
    """Coprime numerator/denominator over Z, joint content 1, den lc > 0."""

    numerator: IntPoly
    denominator: IntPoly

    @staticmethod
    def create(num: IntPoly, den: IntPoly) -> "RationalMap":
        if den.is_zero:
            raise DomainError("denominator is zero")
        if num.is_zero:
            return RationalMap(IntPoly(()), IntPoly((1,)))
        g = poly_gcd(num, den)
        if g.degree >= 1 or abs(g.lead) > 1:
            num = divmod_exact(num, g)
            den = divmod_exact(den, g)
        joint = math.gcd(num.content(), den.content())
        if joint > 1:
            num = IntPoly(tuple(c // joint for c in num.coeffs))
            den = IntPoly(tuple(c // joint for c in den.coeffs))
        if den.lead < 0:
            num, den = -num, -den
        return RationalMap(num, den)

    @staticmethod
    def parse(text: str) -> "RationalMap":
        num, den = parse_map_coeffs(text)
        return RationalMap.create(IntPoly(num), IntPoly(den))

    @property
    def degree(self) -> int:
        num_deg = self.numerator.degree if not self.numerator.is_zero else 0
        return max(num_deg, self.denominator.degree)

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0

    def __call__(self, value: Fraction) -> Fraction:
        den = self.denominator(value)
        if den == 0:
            raise PoleError(f"{value} is a pole")
        return Fraction(self.numerator(value)) / den

    def __str__(self):
        num = format_poly_coeffs(self.numerator.coeffs)
        if self.denominator == IntPoly((1,)):
            return num
        return f"({num})/({format_poly_coeffs(self.denominator.coeffs)})"


@dataclass(frozen=True)
class HeightBounds:
    """h(f(x)) >= deg*h(x) - c_lower and h(f(x)) <= deg*h(x) + c_upper."""

    c_lower: Fraction
    c_upper: Fraction

    def __post_init__(self):
        if self.c_lower < 0 or self.c_upper < 0:
            raise DomainError("height constants must be nonnegative")


def _is_unit_monomial(p: IntPoly) -> bool:
    return not p.is_zero and p.num_terms() == 1 and abs(p.lead) == 1


def _solve_cofactors(f_coeffs: list[int], g_coeffs: list[int], d: int):
    """Integer cofactors (A, B) of degree d-1 with A*F + B*G = R * X^(2d-1)
    and a second pair for R * Y^(2d-1); also returns R = +-Res(F, G)."""
    size = 2 * d
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for j in range(size):
        for i in range(d):
            fj = f_coeffs[j - i] if 0 <= j - i <= d else 0
            gj = g_coeffs[j - i] if 0 <= j - i <= d else 0
            matrix[j][i] = Fraction(fj)
            matrix[j][d + i] = Fraction(gj)
    # LU-style elimination tracking det, then solve for both unit targets
    aug = [row[:] + [Fraction(0), Fraction(0)] for row in matrix]
    aug[size - 1][size] = Fraction(1)  # e_{2d-1} -> R*X^(2d-1)
    aug[0][size + 1] = Fraction(1)  # e_0 -> R*Y^(2d-1)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise DomainError("map components share a projective root (resultant 0)")
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
            det = -det
        det *= aug[col][col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    solutions = []
    for target in (size, size + 1):
        entries = []
        for r in range(size):
            value = aug[r][target] * det
            if value.denominator != 1:
                raise AssertionError("internal: cofactor solution is not integral")
            entries.append(value.numerator)
        solutions.append(entries)
    return solutions[0], solutions[1], det


def height_constants(f: RationalMap) -> HeightBounds:
    """Certified rational c_lower, c_upper; monomial maps return (0, 0)."""
    d = f.degree
    if d < 1:
        raise DomainError("height constants need a map of degree >= 1")
    if _is_unit_monomial(f.numerator) and _is_unit_monomial(f.denominator):
        return HeightBounds(Fraction(0), Fraction(0))
    f_coeffs = [f.numerator[i] for i in range(d + 1)]
    g_coeffs = [f.denominator[i] for i in range(d + 1)]
    sol_x, sol_y, _ = _solve_cofactors(f_coeffs, g_coeffs, d)
    h_cof = max(abs(v) for v in sol_x + sol_y)
    h_map = max(max(abs(c) for c in f_coeffs), max(abs(c) for c in g_coeffs))
    c_lower = log_bounds(Fraction(2 * d * max(1, h_cof)), _CONSTANT_LOG_TOL)[1]
    c_upper = log_bounds(Fraction((d + 1) * h_map), _CONSTANT_LOG_TOL)[1]
    return HeightBounds(c_lower, c_upper)


# ---------------------------------------------------------------------------
# Preperiodicity


@dataclass(frozen=True)
class PreperiodicResult:
    preperiodic: bool
    trace: tuple[AlgebraicNumber, ...]
    pole_hit: bool
    threshold: Fraction
    escaped_at: int | None


def is_preperiodic(a: AlgebraicNumber, f: RationalMap, max_steps: int = 10000) -> PreperiodicResult:
    """Decide preperiodicity of `a` under `f` (degree >= 2) with orbit trace.

    A pole on the orbit classifies the point as not preperiodic (flagged).
    """
    if f.degree < 2:
        raise DomainError("preperiodicity needs a map of degree >= 2")
    threshold = 2 * height_constants(f).c_lower
    seen = {a}
    trace = [a]
    current = a
    for step in range(max_steps):
        try:
            nxt = algebraic_eval(f, current)
        except PoleError:
            return PreperiodicResult(False, tuple(trace), True, threshold, None)
        trace.append(nxt)
        if nxt in seen:
            return PreperiodicResult(True, tuple(trace), False, threshold, None)
        if compare_height(nxt, threshold) > 0:
            # above 2*c_lower heights expand by >= 3/2 forever: no return
            return PreperiodicResult(False, tuple(trace), False, threshold, step + 1)
        seen.add(nxt)
        current = nxt
    raise RuntimeError("orbit did not resolve within max_steps")


@dataclass(frozen=True)
class PreperiodicReport:
    map: RationalMap
    degree_bound: int
    threshold: Fraction
    epsilon: Fraction
    points: tuple[AlgebraicNumber, ...]
    cycles: tuple[tuple[AlgebraicNumber, ...], ...]
    tails: tuple[tuple[AlgebraicNumber, ...], ...]


def preperiodic_points(
    f: RationalMap,
    d_max: int,
    *,
    epsilon: Fraction = DEFAULT_EPSILON,
    budget: int = 10**8,
    workers: int = 1,
) -> PreperiodicReport:
    """All preperiodic points of degree <= d_max, grouped into cycles and
    tails; complete because preperiodic points have h <= 2*c_lower."""
    if f.degree < 2:
        raise DomainError("preperiodic enumeration needs degree >= 2")
    threshold = 2 * height_constants(f).c_lower
    bound = threshold + epsilon
    candidates = enumerate_bounded(d_max, bound, budget=budget, workers=workers)
    points = tuple(
        a for a in candidates if is_preperiodic(a, f).preperiodic
    )
    successor = {}
    point_set = set(points)
    for a in points:
        img = algebraic_eval(f, a)
        if img not in point_set:
            raise AssertionError("internal: preperiodic set is not forward closed")
        successor[a] = img
    cycle_nodes: set[AlgebraicNumber] = set()
    for a in points:
        walker = a
        for _ in range(len(points)):
            walker = successor[walker]
        # walker is now on a cycle
        cycle = [walker]
        nxt = successor[walker]
        while nxt != walker:
            cycle.append(nxt)
            nxt = successor[nxt]
        cycle_nodes.update(cycle)
    cycles = []
    visited: set[AlgebraicNumber] = set()
    for a in sorted(cycle_nodes, key=lambda x: x.sort_key()):
        if a in visited:
            continue
        cycle = [a]
        nxt = successor[a]
        while nxt != a:
            cycle.append(nxt)
            nxt = successor[nxt]
        visited.update(cycle)
        cycles.append(tuple(cycle))
    tail_points = [a for a in points if a not in cycle_nodes]
    has_tail_preimage = {
        b: any(successor[c] == b for c in tail_points) for b in tail_points
    }
    tails = []
    for leaf in sorted(tail_points, key=lambda x: x.sort_key()):
        if has_tail_preimage[leaf]:
            continue
        chain = [leaf]
        walker = successor[leaf]
        while walker not in cycle_nodes:
            chain.append(walker)
            walker = successor[walker]
        chain.append(walker)  # entry point into the cycle
        tails.append(tuple(chain))
    return PreperiodicReport(
        map=f,
        degree_bound=d_max,
        threshold=threshold,
        epsilon=epsilon,
        points=points,
        cycles=tuple(cycles),
        tails=tuple(tails),
    )


# ---------------------------------------------------------------------------
# Properties (P) and (R)


@dataclass(frozen=True)
class PropertyPReport:
    admissible: bool
    invariant: bool
    preperiodic_confirmed: bool | None
    cycles: tuple[tuple[AlgebraicNumber, ...], ...]


def check_property_P_instance(f: RationalMap, points) -> PropertyPReport:
    """For the n = 1 polynomial case: admissibility (non-linear polynomial),
    exact invariance f(X) = X, and, when both hold, the cycle structure."""
    points = sorted(set(points), key=lambda a: a.sort_key())
    admissible = f.is_polynomial and f.degree >= 2
    images = []
    invariant = True
    for a in points:
        try:
            images.append(algebraic_eval(f, a))
        except PoleError:
            invariant = False
            break
    if invariant:
        invariant = sorted(set(images), key=lambda a: a.sort_key()) == points
    if not (admissible and invariant) or not points:
        return PropertyPReport(admissible, invariant, None, ())
    confirmed = all(is_preperiodic(a, f).preperiodic for a in points)
    successor = {a: algebraic_eval(f, a) for a in points}
    cycles = []
    visited: set[AlgebraicNumber] = set()
    for a in points:
        if a in visited:
            continue
        walker = a
        path = []
        while walker not in path and walker in successor:
            path.append(walker)
            walker = successor[walker]
        if walker in path:
            cycle = path[path.index(walker):]
            if not any(c in visited for c in cycle):
                visited.update(cycle)
                cycles.append(tuple(cycle))
    return PropertyPReport(admissible, invariant, confirmed, tuple(cycles))


@dataclass(frozen=True)
class RClassification:
    kind: str  # "moebius" | "finiteness_applies"
    bound: Fraction | None  # 2*c_lower when finiteness applies


def classify_R(f: RationalMap) -> RClassification:
    """Degree <= 1 maps are Moebius (no finiteness conclusion); degree >= 2
    maps carry the invariant-set height bound 2*c_lower."""
    if f.degree <= 1:
        return RClassification("moebius", None)
    return RClassification("finiteness_applies", 2 * height_constants(f).c_lower)


# ---------------------------------------------------------------------------
# Sampling validation of the height constants


@dataclass(frozen=True)
class ValidationReport:
    samples: int
    lower_violations: int
    upper_violations: int
    threshold_checked: int
    threshold_violations: int
    poles_skipped: int

    @property
    def ok(self) -> bool:
        return (
            self.lower_violations == 0
            and self.upper_violations == 0
            and self.threshold_violations == 0
        )


def _sample_algebraic(rng: random.Random, max_degree: int) -> AlgebraicNumber:
    k = rng.randint(1, max_degree)
    if k == 1:
        p = rng.randint(-99, 99)
        q = rng.randint(1, 99)
        return AlgebraicNumber.from_rational(Fraction(p, q))
    while True:
        lead = rng.randint(1, 8)
        coeffs = tuple(rng.randint(-12, 12) for _ in range(k)) + (lead,)
        poly = IntPoly(coeffs)
        if math.gcd(*coeffs) == 1 and is_irreducible(poly):
            return AlgebraicNumber(poly, rng.randrange(k))


def validate_height_constants(
    f: RationalMap,
    bounds: HeightBounds | None = None,
    samples: int = 10000,
    *,
    seed: int = 20817,
    max_degree: int = 3,
    tol: Fraction = Fraction(1, 10**6),
    sample_pool=None,
) -> ValidationReport:
    """Check deg*h(x) - c_lower <= h(f(x)) <= deg*h(x) + c_upper on random
    points (certified-interval comparisons), plus the 3/2-expansion above
    2*c_lower.  A violation requires disjoint intervals, so a correct bound
    can never be flagged."""
    if bounds is None:
        bounds = height_constants(f)
    d = f.degree
    rng = random.Random(seed)
    lower_bad = upper_bad = 0
    threshold_checked = threshold_bad = 0
    poles = 0
    threshold = 2 * bounds.c_lower
    done = 0
    while done < samples:
        a = (
            sample_pool[done % len(sample_pool)]
            if sample_pool
            else _sample_algebraic(rng, max_degree)
        )
        done += 1
        try:
            value = algebraic_eval(f, a)
        except PoleError:
            poles += 1
            continue
        h_a = height(a, tol)
        h_v = height(value, tol)
        if h_v.hi < d * h_a.lo - bounds.c_lower:
            lower_bad += 1
        if h_v.lo > d * h_a.hi + bounds.c_upper:
            upper_bad += 1
        if h_a.lo >= threshold and d >= 2:
            threshold_checked += 1
            if h_v.hi < Fraction(3, 2) * h_a.lo:
                threshold_bad += 1
    return ValidationReport(
        samples=done,
        lower_violations=lower_bad,
        upper_violations=upper_bad,
        threshold_checked=threshold_checked,
        threshold_violations=threshold_bad,
        poles_skipped=poles,
    )


def make_sample_pool(count: int, *, seed: int = 20817, max_degree: int = 3):
    """Deterministic reusable sample set for validating several maps."""
    rng = random.Random(seed)
    return [_sample_algebraic(rng, max_degree) for _ in range(count)]
