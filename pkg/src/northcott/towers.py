"""Nested abelian towers with the prime-escalation condition and the
Widmer divergence quantity.

Each step realizes a finite abelian group by putting each cyclic factor
inside its own cyclotomic field Q(zeta_p), with every step prime p == 1
(mod exponent of the group) chosen strictly above p_prev^(|G|^2).  Every
nontrivial subfield of the step field is then ramified only at step primes,
so its largest ramified prime clears the escalation bound; the step quantity

    inf over L_prev < M <= L_cur of N_{L_prev/Q}(disc(M/L_prev))^(1/([M:Q][M:L_prev]))

is computed exactly over the intermediate-field lattice (integer comparisons
via cross powers), certified as a rational enclosure, and must strictly
exceed the previous largest ramified prime and strictly increase along the
tower.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, VerificationError
from .fields import (
    AbelianField,
    compositum,
    cyclic_subfield_of_cyclotomic,
    discriminant,
    field_from_json,
    field_to_json,
    intermediate_fields,
    intersection,
    is_subfield,
    max_ramified_prime,
    rational_field,
    relative_discriminant_norm,
    subfield_lattice,
)
from .heights import HeightInterval
from .intervals import nth_root_bounds

DEFAULT_QUANTITY_TOL = Fraction(1, 10**9)

_NONABELIAN_TOKENS = {"s3", "s4", "s5", "a4", "a5", "d4", "d5", "q8", "dihedral"}


@dataclass(frozen=True)
class GroupSpec:
    """Finite abelian group as a product of cyclic factors."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        if not self.cyclic_orders or any(n < 2 for n in self.cyclic_orders):
            raise DomainError("group spec needs cyclic orders >= 2")

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.cyclic_orders)

    @staticmethod
    def parse(text: str) -> "GroupSpec":
        token = text.strip().lower()
        if token in _NONABELIAN_TOKENS:
            raise DomainError(
                f"group {text!r} is not abelian; only abelian groups are supported"
            )
        try:
            orders = tuple(int(part) for part in token.split("x"))
        except ValueError as exc:
            raise DomainError(f"cannot parse group spec {text!r}") from exc
        return GroupSpec(orders)

    def __str__(self):
        return "x".join(str(n) for n in self.cyclic_orders)


def parse_group_specs(text: str) -> list[GroupSpec]:
    """Comma-separated steps, factors joined by 'x': "2,2" or "2x2,3"."""
    return [GroupSpec.parse(part) for part in text.split(",")]


@dataclass(frozen=True)
class StepReport:
    """Widmer quantity data for one tower step."""

    index: int
    witness: AbelianField
    norm_value: int  # N = N_{L_prev/Q}(disc(M/L_prev)) at the infimum
    root_exponent: int  # [M:Q] * [M:L_prev]
    quantity: HeightInterval
    p_prev: int | None
    exceeds_p_prev: bool


@dataclass(frozen=True)
class TowerSpec:
    groups: tuple[GroupSpec, ...]
    primes: tuple[tuple[int, ...], ...]  # fresh primes per step, one per cyclic factor
    step_fields: tuple[AbelianField, ...]  # K_i
    composita: tuple[AbelianField, ...]  # L_0 = Q, L_1, ..., L_n
    bounds: tuple[int, ...]  # escalation bound per step

    @property
    def steps(self) -> int:
        return len(self.groups)


@dataclass(frozen=True)
class StepVerification:
    index: int
    intersection_trivial: bool
    quantity_exceeds_p_prev: bool
    quantity_increases: bool
    cond2_certified: bool
    report: StepReport

    @property
    def ok(self) -> bool:
        return (
            self.intersection_trivial
            and self.quantity_exceeds_p_prev
            and self.quantity_increases
            and self.cond2_certified
        )


@dataclass(frozen=True)
class TowerReport:
    steps: tuple[StepVerification, ...]

    @property
    def ok(self) -> bool:
        return all(step.ok for step in self.steps)


def _is_prime(n: int) -> bool:
    import sympy

    return bool(sympy.isprime(n))


def _next_prime_congruent(start_exclusive: int, modulo: int, residue: int = 1) -> int:
    """Smallest prime > start_exclusive congruent to residue mod modulo."""
    candidate = start_exclusive + 1
    candidate += (residue - candidate) % modulo
    while not _is_prime(candidate):
        candidate += modulo
    return candidate


def _quantity_key(norm: int, exponent: int):
    """Exact comparison key for N^(1/r): compare via cross powers."""
    return (norm, exponent)


def _quantity_less(a: tuple[int, int], b: tuple[int, int]) -> bool:
    na, ra = a
    nb, rb = b
    common = math.lcm(ra, rb)
    return na ** (common // ra) < nb ** (common // rb)


def widmer_step_quantity(
    l_prev: AbelianField,
    l_cur: AbelianField,
    tol: Fraction = DEFAULT_QUANTITY_TOL,
) -> StepReport:
    """Minimum over intermediate fields M (L_prev < M <= L_cur) of
    N^(1/([M:Q][M:L_prev])) with N the relative discriminant norm; the
    minimum and ties are decided exactly, the enclosure is for reporting."""
    if not is_subfield(l_prev, l_cur) or l_prev.degree >= l_cur.degree:
        raise DomainError("need strictly nested fields")
    best = None
    for mid in intermediate_fields(l_prev, l_cur):
        norm = relative_discriminant_norm(l_prev, mid)
        exponent = mid.degree * (mid.degree // l_prev.degree)
        key = _quantity_key(norm, exponent)
        entry = (key, mid.degree, mid)
        if best is None:
            best = entry
        else:
            if _quantity_less(key, best[0]) or (
                not _quantity_less(best[0], key) and mid.degree < best[1]
            ):
                best = entry
    key, _, witness = best
    norm, exponent = key
    lo, hi = nth_root_bounds(norm, exponent, tol)
    p_prev = max_ramified_prime(l_prev)
    if p_prev is None:
        exceeds = True
    else:
        exceeds = norm > p_prev**exponent  # N^(1/r) > p_prev, exactly
    return StepReport(
        index=0,
        witness=witness,
        norm_value=norm,
        root_exponent=exponent,
        quantity=HeightInterval(max(Fraction(0), lo), hi),
        p_prev=p_prev,
        exceeds_p_prev=exceeds,
    )


def build_tower_cond2(groups, start_hint: int = 2) -> TowerSpec:
    """Realize each abelian group above the escalation bound
    p > p_prev^(|G|^2), one fresh prime per cyclic factor, all congruent to
    1 mod the group exponent so each factor embeds in Q(zeta_p)."""
    groups = tuple(
        g if isinstance(g, GroupSpec) else GroupSpec.parse(str(g)) for g in groups
    )
    if not groups:
        raise DomainError("empty tower")
    if start_hint < 2:
        raise DomainError("start hint must be at least 2")
    primes: list[tuple[int, ...]] = []
    step_fields: list[AbelianField] = []
    composita = [rational_field()]
    bounds: list[int] = []
    last_prime = max(1, start_hint - 1)
    for i, group in enumerate(groups):
        p_prev = max_ramified_prime(composita[-1])
        bound = 1 if p_prev is None else p_prev ** (group.order**2)
        bounds.append(bound)
        floor = max(bound, last_prime)
        step_primes = []
        field = None
        for n in group.cyclic_orders:
            p = _next_prime_congruent(floor, group.exponent)
            step_primes.append(p)
            floor = p
            last_prime = p
            factor_field = cyclic_subfield_of_cyclotomic(p, n)
            field = factor_field if field is None else compositum(field, factor_field)
        primes.append(tuple(step_primes))
        step_fields.append(field)
        composita.append(compositum(composita[-1], field))
        if composita[-1].degree != composita[-2].degree * group.order:
            raise AssertionError("internal: tower step is not linearly disjoint")
    return TowerSpec(
        groups=groups,
        primes=tuple(primes),
        step_fields=tuple(step_fields),
        composita=tuple(composita),
        bounds=tuple(bounds),
    )


def _cond2_certified(spec: TowerSpec, index: int) -> bool:
    """Every nontrivial subfield H of K_i has max ramified prime > bound."""
    field = spec.step_fields[index]
    bound = spec.bounds[index]
    group = spec.groups[index]
    for p in spec.primes[index]:
        if not _is_prime(p):
            return False
        if p <= bound:
            return False
        if (p - 1) % group.exponent != 0:
            return False
    for sub in subfield_lattice(field):
        if sub.degree == 1:
            continue
        p_h = max_ramified_prime(sub)
        if p_h is None or p_h <= bound:
            return False
    return True


def verify_tower(
    spec: TowerSpec,
    steps: int | None = None,
    tol: Fraction = DEFAULT_QUANTITY_TOL,
) -> TowerReport:
    """Check, per step: (a) intersection(L_prev, K_i) = Q; (b) the Widmer
    quantity strictly exceeds p_{K_{i-1}} (exact integer comparison);
    (c) quantities strictly increase; plus the cond2 prime certificates."""
    count = spec.steps if steps is None else min(steps, spec.steps)
    out = []
    prev_key = None
    for i in range(count):
        l_prev, l_cur = spec.composita[i], spec.composita[i + 1]
        inter_ok = intersection(l_prev, spec.step_fields[i]).degree == 1
        report = widmer_step_quantity(l_prev, l_cur, tol)
        report = StepReport(
            index=i + 1,
            witness=report.witness,
            norm_value=report.norm_value,
            root_exponent=report.root_exponent,
            quantity=report.quantity,
            p_prev=report.p_prev,
            exceeds_p_prev=report.exceeds_p_prev,
        )
        key = _quantity_key(report.norm_value, report.root_exponent)
        increases = True if prev_key is None else _quantity_less(prev_key, key)
        prev_key = key
        out.append(
            StepVerification(
                index=i + 1,
                intersection_trivial=inter_ok,
                quantity_exceeds_p_prev=report.exceeds_p_prev,
                quantity_increases=increases,
                cond2_certified=_cond2_certified(spec, i),
                report=report,
            )
        )
    return TowerReport(tuple(out))


# ---------------------------------------------------------------------------
# Certificates


def tower_certificate(spec: TowerSpec, tol: Fraction = DEFAULT_QUANTITY_TOL) -> dict:
    """JSON-serializable certificate; the verifier re-checks it without
    re-searching primes."""
    steps = []
    for i in range(spec.steps):
        report = widmer_step_quantity(spec.composita[i], spec.composita[i + 1], tol)
        steps.append(
            {
                "step": i + 1,
                "primes": [str(p) for p in spec.primes[i]],
                "bound": str(spec.bounds[i]),
                "witness": field_to_json(report.witness),
                "norm": str(report.norm_value),
                "exponent": report.root_exponent,
                "quantity_lo": str(report.quantity.lo),
                "quantity_hi": str(report.quantity.hi),
                "p_prev": None if report.p_prev is None else str(report.p_prev),
            }
        )
    return {
        "schema": 1,
        "groups": [str(g) for g in spec.groups],
        "steps": steps,
    }


def spec_from_certificate(cert: dict) -> TowerSpec:
    """Rebuild the tower from recorded groups and primes (no prime search)."""
    groups = tuple(GroupSpec.parse(g) for g in cert["groups"])
    primes = tuple(
        tuple(int(p) for p in step["primes"]) for step in cert["steps"]
    )
    if len(groups) != len(primes):
        raise VerificationError("certificate step count mismatch")
    step_fields = []
    composita = [rational_field()]
    bounds = []
    for group, step_primes in zip(groups, primes):
        if len(step_primes) != len(group.cyclic_orders):
            raise VerificationError("certificate prime count mismatch")
        p_prev = max_ramified_prime(composita[-1])
        bounds.append(1 if p_prev is None else p_prev ** (group.order**2))
        field = None
        for n, p in zip(group.cyclic_orders, step_primes):
            factor_field = cyclic_subfield_of_cyclotomic(p, n)
            field = factor_field if field is None else compositum(field, factor_field)
        step_fields.append(field)
        composita.append(compositum(composita[-1], field))
    return TowerSpec(
        groups=groups,
        primes=primes,
        step_fields=tuple(step_fields),
        composita=tuple(composita),
        bounds=tuple(bounds),
    )


def verify_certificate(cert: dict, tol: Fraction = DEFAULT_QUANTITY_TOL) -> TowerReport:
    """Re-check a recorded certificate: primality, congruences, escalation
    bounds, disjointness, and the quantity chain; recorded quantities must
    match the recomputed exact values."""
    if cert.get("schema") != 1:
        raise VerificationError("unsupported certificate schema")
    spec = spec_from_certificate(cert)
    report = verify_tower(spec, tol=tol)
    for step, entry in zip(report.steps, cert["steps"]):
        if step.report.norm_value != int(entry["norm"]):
            raise VerificationError(f"step {step.index}: norm mismatch")
        if step.report.root_exponent != int(entry["exponent"]):
            raise VerificationError(f"step {step.index}: exponent mismatch")
        recorded = Fraction(entry["quantity_lo"]), Fraction(entry["quantity_hi"])
        if not (recorded[0] <= step.report.quantity.hi and step.report.quantity.lo <= recorded[1]):
            raise VerificationError(f"step {step.index}: quantity enclosure mismatch")
    return report
