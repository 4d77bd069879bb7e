"""Exact arithmetic in the multiquadratic field K_m = Q(sqrt p_1, ..., sqrt p_m).

An element is stored as a map from a radical mask to a rational coefficient.
Bit ``i - 1`` of the mask set means the monomial contains ``sqrt(p_i)``, so
mask ``0b101`` is ``sqrt(p_1) * sqrt(p_3)``.  Masks are the little-endian
integer encoding of the sign-exponent vector ``eps``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from sympy import isprime, prime


class StructureError(ValueError):
    """Operands live in incompatible structures (basis, level, mode)."""


class WindowError(StructureError):
    """A generator or radical index lies outside the configured level."""


def popcount(n: int) -> int:
    return bin(n).count("1")


def mask_to_vector(mask: int, m: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(m))


def vector_to_mask(vec: Iterable[int]) -> int:
    mask = 0
    for i, bit in enumerate(vec):
        if bit not in (0, 1):
            raise ValueError(f"sign-exponent entries must be 0 or 1, got {bit}")
        mask |= bit << i
    return mask


@dataclass(frozen=True)
class PrimeBasis:
    """Ordered primes p_1 < ... < p_m generating K_m."""

    primes: tuple[int, ...]

    def __post_init__(self):
        primes = tuple(int(p) for p in self.primes)
        object.__setattr__(self, "primes", primes)
        for p in primes:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError(f"primes must be strictly increasing: {primes}")

    @classmethod
    def first(cls, m: int) -> "PrimeBasis":
        if m < 0:
            raise ValueError("level must be non-negative")
        return cls(tuple(prime(i) for i in range(1, m + 1)))

    @property
    def level(self) -> int:
        return len(self.primes)

    def radical_square(self, mask: int) -> int:
        """Product of p_i over the bits of ``mask``."""
        return _mask_product(self.primes, mask)


@lru_cache(maxsize=4096)
def _mask_product(primes: tuple[int, ...], mask: int) -> int:
    out = 1
    i = 0
    while mask:
        if mask & 1:
            out *= primes[i]
        mask >>= 1
        i += 1
    return out


def _clean(terms: Mapping[int, Fraction]) -> dict[int, Fraction]:
    return {e: c for e, c in terms.items() if c}


class FieldElement:
    """Element of K_m, sum over masks eps of a_eps * prod_i sqrt(p_i)^eps_i."""

    __slots__ = ("basis", "terms", "_hash")

    def __init__(self, basis: PrimeBasis, terms: Mapping[int, Fraction] | None = None):
        self.basis = basis
        limit = 1 << basis.level
        clean = {}
        for e, c in (terms or {}).items():
            if not 0 <= e < limit:
                raise WindowError(f"radical mask {e:b} exceeds level {basis.level}")
            c = Fraction(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, basis: PrimeBasis, terms: dict[int, Fraction]) -> "FieldElement":
        obj = cls.__new__(cls)
        obj.basis = basis
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, basis: PrimeBasis, value) -> "FieldElement":
        value = Fraction(value)
        return cls._raw(basis, {0: value} if value else {})

    @classmethod
    def sqrt_p(cls, basis: PrimeBasis, i: int) -> "FieldElement":
        """The radical sqrt(p_i), 1-based."""
        if not 1 <= i <= basis.level:
            raise WindowError(f"radical index {i} outside level {basis.level}")
        return cls._raw(basis, {1 << (i - 1): Fraction(1)})

    @property
    def level(self) -> int:
        return self.basis.level

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return set(self.terms) <= {0}

    def rational_part(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def _check(self, other: "FieldElement"):
        if self.basis != other.basis:
            raise StructureError(f"basis mismatch: {self.basis.primes} vs {other.basis.primes}")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.rational(self.basis, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return field_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.basis, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return field_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return field_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return field_mul(self, field_inv(other))

    def __pow__(self, k: int):
        if k < 0:
            return field_inv(self) ** (-k)
        result = FieldElement.rational(self.basis, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: Fraction(other)} if other else {})
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.basis, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"FieldElement({format_field(self)})"

    def __str__(self):
        return format_field(self)


def radical_monomial(mask: int) -> str:
    names = []
    i = 1
    while mask:
        if mask & 1:
            names.append(f"r{i}")
        mask >>= 1
        i += 1
    return "*".join(names)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_field(a: FieldElement) -> str:
    """Canonical text: terms by ascending mask, radicals as ``r<i>``."""
    if not a.terms:
        return "0"
    parts = []
    for mask in sorted(a.terms):
        c = a.terms[mask]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mask == 0:
            body = format_rational(mag)
        elif mag == 1:
            body = radical_monomial(mask)
        else:
            body = f"{format_rational(mag)}*{radical_monomial(mask)}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    terms = dict(a.terms)
    for e, c in b.terms.items():
        s = terms.get(e, 0) + c
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
    return FieldElement._raw(a.basis, terms)


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    primes = a.basis.primes
    terms: dict[int, Fraction] = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            e = e1 ^ e2
            v = c1 * c2
            common = e1 & e2
            if common:
                v *= _mask_product(primes, common)
            terms[e] = terms.get(e, 0) + v
    return FieldElement._raw(a.basis, _clean(terms))


def _split_top(terms: dict[int, Fraction], k: int) -> tuple[dict, dict]:
    """Write terms at level k as c + d*sqrt(p_k) with c, d at level k-1."""
    bit = 1 << (k - 1)
    c, d = {}, {}
    for e, v in terms.items():
        if e & bit:
            d[e ^ bit] = v
        else:
            c[e] = v
    return c, d


def _inv_level(basis: PrimeBasis, terms: dict[int, Fraction], k: int) -> dict[int, Fraction]:
    if k == 0:
        return {0: 1 / terms[0]}
    # skip levels the element does not touch
    bit = 1 << (k - 1)
    if not any(e & bit for e in terms):
        return _inv_level(basis, terms, k - 1)
    c, d = _split_top(terms, k)
    cc = FieldElement._raw(basis, c)
    dd = FieldElement._raw(basis, d)
    p = basis.primes[k - 1]
    reduced = field_add(field_mul(cc, cc), -(field_mul(dd, dd) * p))
    if reduced.is_zero():
        raise ZeroDivisionError("norm vanished: radicals are not independent")
    inner = FieldElement._raw(basis, _inv_level(basis, reduced.terms, k - 1))
    conj = dict(c)
    for e, v in d.items():
        conj[e | bit] = -v
    return field_mul(FieldElement._raw(basis, conj), inner).terms


def field_inv(a: FieldElement) -> FieldElement:
    """Inverse by recursive conjugation down the tower of quadratic extensions."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero field element")
    return FieldElement._raw(a.basis, _inv_level(a.basis, a.terms, a.level))


def apply_auto(i: int, a: FieldElement) -> FieldElement:
    """The automorphism f_i: sqrt(p_i) -> -sqrt(p_i), other radicals fixed."""
    if not 1 <= i <= a.level:
        raise WindowError(f"automorphism index {i} outside level {a.level}")
    bit = 1 << (i - 1)
    return FieldElement._raw(a.basis, {e: (-c if e & bit else c) for e, c in a.terms.items()})


def twist_by_parity(parity: int, a: FieldElement) -> FieldElement:
    """Scale each term by (-1)^(number of radicals shared with ``parity``)."""
    if not parity:
        return a
    return FieldElement._raw(
        a.basis,
        {e: (-c if popcount(e & parity) & 1 else c) for e, c in a.terms.items()},
    )


def apply_phi(g, a: FieldElement) -> FieldElement:
    """Twist character Phi_g restricted to K_m.

    Generators x_j with j > m act on radicals the element cannot contain, so
    only exponents at indices <= m matter.
    """
    return twist_by_parity(g.parity_mask(a.level), a)


def fixed_by_all(a: FieldElement) -> bool:
    return all(apply_auto(i, a) == a for i in range(1, a.level + 1))


def field_norm(a: FieldElement) -> Fraction:
    """Absolute norm N_{K_m/Q}: product of all Galois conjugates."""
    acc = FieldElement.rational(a.basis, 1)
    for parity in range(1 << a.level):
        acc = acc * twist_by_parity(parity, a)
    if not acc.is_rational():
        raise AssertionError("conjugate product left Q")
    return acc.rational_part()
