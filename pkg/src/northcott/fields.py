"""Abelian number fields as finite groups of Dirichlet characters.

A character mod m is stored as an exponent vector over the canonical
generators of (Z/m)* (smallest primitive root for odd prime powers, the
{-1, 5} pair for 2^k, k >= 3); a field is a product-closed set of characters
at a common modulus, normalized so the modulus is the lcm of the conductors.
Degrees, conductors, discriminants (conductor-discriminant formula), subfield
lattices, composita, intersections and local degrees are all exact integer
computations.

Characters modulo a prime too large for discrete logarithms are supported as
long as only their *orders* matter (conductors, group arithmetic) or they are
quadratic (values via the Jacobi symbol); this covers every tower built here,
where large primes only ever carry quadratic or full level-n subgroups, whose
exponent sets are independent of the generator choice.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

Modulus = tuple[tuple[int, int], ...]  # sorted ((prime, exponent), ...)

_DLOG_LIMIT = 10**8


def _factorint(n: int) -> dict[int, int]:
    import sympy

    return {int(p): int(e) for p, e in sympy.factorint(n).items()}


def _is_prime(n: int) -> bool:
    import sympy

    return bool(sympy.isprime(n))


def _jacobi(a: int, n: int) -> int:
    import sympy

    return int(sympy.jacobi_symbol(a, n))


def _discrete_log(modulus: int, value: int, base: int) -> int:
    import sympy

    return int(sympy.ntheory.discrete_log(modulus, value, base))


@functools.lru_cache(maxsize=None)
def _primitive_root(q: int) -> int:
    import sympy

    g = sympy.primitive_root(q)
    if g is None:
        raise DomainError(f"{q} has no primitive root")
    return int(g)


def modulus_value(modulus: Modulus) -> int:
    return math.prod(p**e for p, e in modulus)


def modulus_from_factored(factored: dict[int, int]) -> Modulus:
    return tuple(sorted((p, e) for p, e in factored.items() if e > 0))


@dataclass(frozen=True)
class _Component:
    """One cyclic factor of (Z/m)*."""

    prime: int
    power: int  # p^e
    order: int
    generator: int | None  # None when discrete logs are infeasible
    kind: str  # "odd" | "four" | "two_minus" | "two_five"


@functools.lru_cache(maxsize=None)
def _components(modulus: Modulus) -> tuple[_Component, ...]:
    comps = []
    for p, e in modulus:
        q = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                comps.append(_Component(2, 4, 2, 3, "four"))
            else:
                comps.append(_Component(2, q, 2, q - 1, "two_minus"))
                comps.append(_Component(2, q, 2 ** (e - 2), 5, "two_five"))
        else:
            order = p ** (e - 1) * (p - 1)
            gen = _primitive_root(q) if q <= _DLOG_LIMIT else None
            comps.append(_Component(p, q, order, gen, "odd"))
    return tuple(comps)


def _component_dlog(comp: _Component, a: int) -> int:
    """Discrete log of a on this component of (Z/m)*."""
    a = a % comp.power
    if comp.kind == "four":
        return 0 if a % 4 == 1 else 1
    if comp.kind == "two_minus":
        return 0 if a % 4 == 1 else 1
    if comp.kind == "two_five":
        b = a if a % 4 == 1 else (-a) % comp.power
        if comp.order == 1:
            return 0
        return _discrete_log(comp.power, b, 5)
    if comp.generator is None:
        raise DomainError(
            f"discrete log mod {comp.power} is out of reach for exact evaluation"
        )
    if a == 1:
        return 0
    return _discrete_log(comp.power, a, comp.generator)


@dataclass(frozen=True)
class DirichletCharacter:
    """Exponent vector over the canonical generators of (Z/m)*:
    chi(g_i) = exp(2*pi*i * exponents[i] / order_i)."""

    modulus: Modulus
    exponents: tuple[int, ...]

    def __post_init__(self):
        comps = _components(self.modulus)
        if len(comps) != len(self.exponents):
            raise DomainError("exponent vector does not match the unit group")
        if any(not 0 <= c < comp.order for c, comp in zip(self.exponents, comps)):
            object.__setattr__(
                self,
                "exponents",
                tuple(c % comp.order for c, comp in zip(self.exponents, comps)),
            )

    @property
    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.exponents)

    def order(self) -> int:
        out = 1
        for c, comp in zip(self.exponents, _components(self.modulus)):
            out = math.lcm(out, comp.order // math.gcd(comp.order, c))
        return out

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise DomainError("characters live at different moduli; rebase first")
        comps = _components(self.modulus)
        return DirichletCharacter(
            self.modulus,
            tuple((a + b) % comp.order for a, b, comp in zip(self.exponents, other.exponents, comps)),
        )

    def inverse(self) -> "DirichletCharacter":
        comps = _components(self.modulus)
        return DirichletCharacter(
            self.modulus, tuple((-c) % comp.order for c, comp in zip(self.exponents, comps))
        )

    def conductor_factored(self) -> dict[int, int]:
        comps = _components(self.modulus)
        by_prime: dict[int, list[tuple[_Component, int]]] = {}
        for c, comp in zip(self.exponents, comps):
            by_prime.setdefault(comp.prime, []).append((comp, c))
        out: dict[int, int] = {}
        for p, items in by_prime.items():
            if p != 2:
                (comp, c) = items[0]
                if c == 0:
                    continue
                local_order = comp.order // math.gcd(comp.order, c)
                v = 0
                m = local_order
                while m % p == 0:
                    v += 1
                    m //= p
                out[p] = 1 + v
            else:
                minus = five = 0
                has_five = False
                for comp, c in items:
                    if comp.kind in ("four", "two_minus"):
                        minus = c
                    else:
                        has_five = True
                        five_order = comp.order // math.gcd(comp.order, c) if c else 1
                        five = c
                if has_five and five:
                    w = (five_order - 1).bit_length()  # v2 of the (2-power) order
                    out[2] = w + 2
                elif minus:
                    out[2] = 2
        return out

    def conductor(self) -> int:
        return math.prod(p**e for p, e in self.conductor_factored().items())

    def value_at(self, a: int) -> Fraction:
        """chi(a) as the exponent t in exp(2*pi*i*t), t in [0, 1) exact."""
        m = modulus_value(self.modulus)
        if math.gcd(a, m) != 1:
            raise DomainError(f"{a} is not a unit mod {m}")
        total = Fraction(0)
        for c, comp in zip(self.exponents, _components(self.modulus)):
            if c == 0:
                continue
            if comp.kind == "odd" and comp.generator is None:
                if 2 * c == comp.order:
                    if _jacobi(a, comp.prime) == -1:
                        total += Fraction(1, 2)
                    continue
                raise DomainError(
                    f"character value mod {comp.power} needs an out-of-reach discrete log"
                )
            ell = _component_dlog(comp, a)
            total += Fraction(c * ell, comp.order)
        return total - math.floor(total)

    def _local_value(self, p: int, a: int) -> Fraction:
        """Product of only the p-components, evaluated at a."""
        total = Fraction(0)
        for c, comp in zip(self.exponents, _components(self.modulus)):
            if comp.prime != p or c == 0:
                continue
            if comp.kind == "odd" and comp.generator is None:
                raise DomainError("cannot transform characters at an out-of-reach prime")
            ell = _component_dlog(comp, a)
            total += Fraction(c * ell, comp.order)
        return total - math.floor(total)


def _old_component_at(chi: DirichletCharacter, p: int):
    return [
        (comp, c) for c, comp in zip(chi.exponents, _components(chi.modulus)) if comp.prime == p
    ]


def rebase(chi: DirichletCharacter, new_modulus: Modulus) -> DirichletCharacter:
    """The character mod new_modulus induced by chi (conductor must divide it)."""
    if chi.modulus == new_modulus:
        return chi
    old = dict(chi.modulus)
    cond = chi.conductor_factored()
    for p, e in cond.items():
        if dict(new_modulus).get(p, 0) < e:
            raise DomainError("conductor does not divide the target modulus")
    exps = []
    for comp in _components(new_modulus):
        p = comp.prime
        if p not in old:
            exps.append(0)
            continue
        olds = _old_component_at(chi, p)
        if not olds:
            exps.append(0)
            continue
        if len(olds) == 1 and olds[0][0].generator is None:
            ocomp, oc = olds[0]
            if comp.power != ocomp.power:
                raise DomainError("cannot transform characters at an out-of-reach prime")
            exps.append(oc)
            continue
        e_old = olds[0][0].power
        value = chi._local_value(p, comp.generator % e_old if comp.generator else 1)
        scaled = value * comp.order
        if scaled.denominator != 1:
            raise DomainError("internal: character transform is not integral")
        exps.append(scaled.numerator % comp.order)
    return DirichletCharacter(new_modulus, tuple(exps))


def restrict_to_conductor(chi: DirichletCharacter) -> DirichletCharacter:
    target = modulus_from_factored(chi.conductor_factored())
    if target == chi.modulus:
        return chi
    exps = []
    for comp in _components(target):
        p = comp.prime
        olds = _old_component_at(chi, p)
        if len(olds) == 1 and olds[0][0].generator is None:
            exps.append(olds[0][1])
            continue
        e_old = olds[0][0].power
        value = chi._local_value(p, comp.generator % e_old if comp.generator % e_old != 0 else 1)
        scaled = value * comp.order
        if scaled.denominator != 1:
            raise DomainError("internal: primitive restriction is not integral")
        exps.append(scaled.numerator % comp.order)
    return DirichletCharacter(target, tuple(exps))


# ---------------------------------------------------------------------------
# Fields


@dataclass(frozen=True)
class AbelianField:
    """Product-closed character group at the lcm of its conductors."""

    modulus: Modulus
    characters: frozenset[DirichletCharacter]

    @property
    def degree(self) -> int:
        return len(self.characters)

    def sorted_characters(self) -> list[DirichletCharacter]:
        return sorted(self.characters, key=lambda chi: chi.exponents)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __str__(self):
        return f"AbelianField(modulus={modulus_value(self.modulus)}, degree={self.degree})"


def _closure(modulus: Modulus, seed) -> frozenset[DirichletCharacter]:
    comps = _components(modulus)
    trivial = DirichletCharacter(modulus, (0,) * len(comps))
    group: set[DirichletCharacter] = {trivial}
    for gen in sorted(set(seed), key=lambda chi: chi.exponents):
        if gen in group:
            continue
        layers = list(group)
        power = gen
        while power not in group:
            layers.extend(power * h for h in group)
            power = power * gen
        group = set(layers)
    return frozenset(group)


def _make_field(modulus: Modulus, chars) -> AbelianField:
    group = _closure(modulus, chars)
    cond: dict[int, int] = {}
    for chi in group:
        for p, e in chi.conductor_factored().items():
            cond[p] = max(cond.get(p, 0), e)
    target = modulus_from_factored(cond)
    if target != modulus:
        group = frozenset(rebase(restrict_to_conductor(chi), target) for chi in group)
    field = AbelianField(target, group)
    _assert_prime_power_bound(field)
    return field


def _assert_prime_power_bound(field: AbelianField) -> None:
    # v_p(disc) <= 2*[H:Q]^2 at every prime (standard discriminant bound)
    bound = 2 * field.degree**2
    for p, e in discriminant_factored(field).items():
        if e > bound:
            raise AssertionError(
                f"prime power bound violated at p={p}: v_p={e} > {bound}"
            )


def prime_power_bound_ok(field: AbelianField) -> bool:
    bound = 2 * field.degree**2
    return all(e <= bound for e in discriminant_factored(field).values())


def rational_field() -> AbelianField:
    return AbelianField((), frozenset({DirichletCharacter((), ())}))


def _squarefree_kernel(n: int) -> int:
    out = 1
    for p, e in _factorint(abs(n)).items():
        if e % 2 == 1:
            out *= p
    return out if n > 0 else -out


def quadratic_field(d: int) -> AbelianField:
    """Order-2 character group of Q(sqrt(d)); accepts a squarefree generator
    or a fundamental discriminant (both normalized internally)."""
    if d == 0:
        raise DomainError("0 does not define a quadratic field")
    core = _squarefree_kernel(d)
    if core == 1:
        raise DomainError(f"{d} is a perfect square, not a quadratic field")
    disc = core if core % 4 == 1 else 4 * core
    odd_primes = [p for p in _factorint(abs(core)).items() if p[0] != 2]
    two_part = disc
    for p, _ in odd_primes:
        p_star = p if p % 4 == 1 else -p
        two_part //= p_star
    factored = _factorint(abs(disc))
    modulus = modulus_from_factored(factored)
    comps = _components(modulus)
    exps = []
    for comp in comps:
        if comp.kind == "odd":
            exps.append(comp.order // 2 if abs(core) % comp.prime == 0 else 0)
        elif comp.kind == "four":
            exps.append(1)  # two_part == -4
        elif comp.kind == "two_minus":
            exps.append(1 if two_part == -8 else 0)
        else:  # two_five
            exps.append(comp.order // 2)  # two_part == +-8
    chi = DirichletCharacter(modulus, tuple(exps))
    if chi.conductor() != abs(disc):
        raise AssertionError("internal: quadratic character conductor mismatch")
    return _make_field(modulus, [chi])


def cyclic_subfield_of_cyclotomic(p: int, n: int) -> AbelianField:
    """The unique degree-n subfield of Q(zeta_p) for an odd prime p, n | p-1."""
    if not _is_prime(p) or p == 2:
        raise DomainError(f"{p} is not an odd prime")
    if n < 2 or (p - 1) % n != 0:
        raise DomainError(f"{n} does not divide {p} - 1")
    modulus = ((p, 1),)
    chi = DirichletCharacter(modulus, ((p - 1) // n,))
    return _make_field(modulus, [chi])


def cyclotomic_field(n: int) -> AbelianField:
    """Q(zeta_n) as the full character group mod n."""
    if n < 1:
        raise DomainError("cyclotomic index must be positive")
    if n % 4 == 2:
        n //= 2
    if n == 1:
        return rational_field()
    modulus = modulus_from_factored(_factorint(n))
    comps = _components(modulus)
    chars = []
    for comp_idx, comp in enumerate(comps):
        exps = [0] * len(comps)
        exps[comp_idx] = 1
        chars.append(DirichletCharacter(modulus, tuple(exps)))
    return _make_field(modulus, chars)


def common_modulus(f: AbelianField, g: AbelianField) -> Modulus:
    merged: dict[int, int] = dict(f.modulus)
    for p, e in g.modulus:
        merged[p] = max(merged.get(p, 0), e)
    return modulus_from_factored(merged)


def compositum(f: AbelianField, g: AbelianField) -> AbelianField:
    m = common_modulus(f, g)
    chars = [rebase(chi, m) for chi in f.characters] + [rebase(chi, m) for chi in g.characters]
    return _make_field(m, chars)


def intersection(f: AbelianField, g: AbelianField) -> AbelianField:
    m = common_modulus(f, g)
    fc = {rebase(chi, m) for chi in f.characters}
    gc = {rebase(chi, m) for chi in g.characters}
    return _make_field(m, fc & gc)


def is_subfield(inner: AbelianField, outer: AbelianField) -> bool:
    m = common_modulus(inner, outer)
    ic = {rebase(chi, m) for chi in inner.characters}
    oc = {rebase(chi, m) for chi in outer.characters}
    return ic <= oc


def subfield_lattice(field: AbelianField) -> list[AbelianField]:
    """All subfields, via the subgroups of the character group."""
    chars = field.sorted_characters()
    trivial = next(chi for chi in chars if chi.is_trivial)
    subgroups = {frozenset({trivial})}
    frontier = [frozenset({trivial})]
    while frontier:
        current = frontier.pop()
        for chi in chars:
            if chi in current:
                continue
            extended = frozenset(_closure(field.modulus, set(current) | {chi}))
            if extended not in subgroups:
                subgroups.add(extended)
                frontier.append(extended)
    fields = [_make_field(field.modulus, sub) for sub in subgroups]
    fields.sort(key=_field_sort_key)
    return fields


def _field_sort_key(field: AbelianField):
    return (
        field.degree,
        modulus_value(field.modulus),
        tuple(chi.exponents for chi in field.sorted_characters()),
    )


def intermediate_fields(lower: AbelianField, upper: AbelianField) -> list[AbelianField]:
    """Fields M with lower < M <= upper (strictly above lower)."""
    if not is_subfield(lower, upper):
        raise DomainError("lower is not a subfield of upper")
    m = common_modulus(lower, upper)
    base = frozenset(rebase(chi, m) for chi in lower.characters)
    upper_chars = sorted(
        (rebase(chi, m) for chi in upper.characters), key=lambda chi: chi.exponents
    )
    subgroups = {base}
    frontier = [base]
    while frontier:
        current = frontier.pop()
        for chi in upper_chars:
            if chi in current:
                continue
            extended = frozenset(_closure(m, set(current) | {chi}))
            if extended not in subgroups:
                subgroups.add(extended)
                frontier.append(extended)
    subgroups.discard(base)
    fields = [_make_field(m, sub) for sub in subgroups]
    fields.sort(key=_field_sort_key)
    return fields


# ---------------------------------------------------------------------------
# Discriminants and local data


def discriminant_factored(field: AbelianField) -> dict[int, int]:
    out: dict[int, int] = {}
    for chi in field.characters:
        for p, e in chi.conductor_factored().items():
            out[p] = out.get(p, 0) + e
    return dict(sorted(out.items()))


def discriminant(field: AbelianField) -> int:
    """|disc| by the conductor-discriminant formula: product of conductors."""
    return math.prod(p**e for p, e in discriminant_factored(field).items())


def relative_discriminant_norm(inner: AbelianField, outer: AbelianField) -> int:
    """N_{L/Q}(disc(M/L)) = |disc M| / |disc L|^[M:L], exact by construction."""
    if not is_subfield(inner, outer):
        raise DomainError("relative discriminant norm needs nested fields")
    if inner.degree == 0 or outer.degree % inner.degree != 0:
        raise AssertionError("internal: degree divisibility violated")
    rel_deg = outer.degree // inner.degree
    inner_disc = discriminant_factored(inner)
    outer_disc = discriminant_factored(outer)
    out = 1
    for p, e in outer_disc.items():
        diff = e - rel_deg * inner_disc.get(p, 0)
        if diff < 0:
            raise AssertionError("internal: tower discriminant identity violated")
        out *= p**diff
    for p, e in inner_disc.items():
        if p not in outer_disc and e:
            raise AssertionError("internal: tower discriminant identity violated")
    return out


def max_ramified_prime(field: AbelianField):
    factored = discriminant_factored(field)
    return max(factored) if factored else None


def local_degree(field: AbelianField, p: int) -> int:
    """e*f at p: e = index of the p-unramified character subgroup, f = order
    of the image of evaluation-at-p (Frobenius) on that subgroup."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    unramified = [
        chi for chi in field.characters if p not in chi.conductor_factored()
    ]
    if field.degree % len(unramified) != 0:
        raise AssertionError("internal: unramified characters do not form a subgroup")
    e = field.degree // len(unramified)
    f = 1
    for chi in unramified:
        value = restrict_to_conductor(chi).value_at(p)
        f = math.lcm(f, value.denominator)
    return e * f


# ---------------------------------------------------------------------------
# Serialization


def field_to_json(field: AbelianField) -> dict:
    gens: list[DirichletCharacter] = []
    current: frozenset[DirichletCharacter] = _closure(field.modulus, [])
    for chi in field.sorted_characters():
        if chi not in current:
            gens.append(chi)
            current = _closure(field.modulus, list(gens))
    return {
        "modulus": [[p, e] for p, e in field.modulus],
        "generators": [list(chi.exponents) for chi in gens],
    }


def field_from_json(data: dict) -> AbelianField:
    modulus = tuple((int(p), int(e)) for p, e in data["modulus"])
    chars = [DirichletCharacter(modulus, tuple(int(c) for c in exps)) for exps in data["generators"]]
    return _make_field(modulus, chars)
