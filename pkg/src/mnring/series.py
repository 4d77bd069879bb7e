"""Finite twisted formal sums sum_x a_x * x over G with coefficients in K_m.

The product is sum_z (sum_{xy=z} a_x * Phi_x(b_y)) z.  Elements with infinite
well-ordered support only appear as :class:`TruncatedSeries`, a finite body
plus a frontier below which the body is known to be exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from . import numfield as nf
from .grp import GroupElement, compose, format_group, invert, lex_compare, Ordering
from .numfield import FieldElement, PrimeBasis, StructureError, WindowError, format_field


class NotInvertibleError(ArithmeticError):
    """No exact inverse inside the finite model; route to the crossed model."""


class NormalizationError(ArithmeticError):
    """Leading-term factorization did not leave a strictly positive tail."""


class SeriesElement:
    __slots__ = ("basis", "terms", "_sorted")

    def __init__(self, basis: PrimeBasis, terms: Mapping[GroupElement, FieldElement] | None = None):
        self.basis = basis
        clean = {}
        for g, c in (terms or {}).items():
            if not isinstance(c, FieldElement):
                c = FieldElement.rational(basis, c)
            elif c.basis != basis:
                raise StructureError("coefficient basis differs from series basis")
            if c:
                clean[g] = c
        self.terms = clean
        self._sorted = None

    @classmethod
    def _raw(cls, basis, terms):
        obj = cls.__new__(cls)
        obj.basis = basis
        obj.terms = terms
        obj._sorted = None
        return obj

    @classmethod
    def zero(cls, basis: PrimeBasis) -> "SeriesElement":
        return cls._raw(basis, {})

    @classmethod
    def one(cls, basis: PrimeBasis) -> "SeriesElement":
        return cls.monomial(FieldElement.rational(basis, 1), GroupElement.identity())

    @classmethod
    def monomial(cls, coeff: FieldElement, g: GroupElement) -> "SeriesElement":
        return cls._raw(coeff.basis, {g: coeff} if coeff else {})

    @classmethod
    def scalar(cls, basis: PrimeBasis, value) -> "SeriesElement":
        return cls.monomial(FieldElement.rational(basis, value), GroupElement.identity())

    @classmethod
    def radical(cls, basis: PrimeBasis, i: int) -> "SeriesElement":
        return cls.monomial(FieldElement.sqrt_p(basis, i), GroupElement.identity())

    @classmethod
    def gen(cls, basis: PrimeBasis, i: int, n: int = 1) -> "SeriesElement":
        return cls.monomial(FieldElement.rational(basis, 1), GroupElement.gen(i, n))

    def items(self) -> list[tuple[GroupElement, FieldElement]]:
        """Terms in ascending lex order of the group part."""
        if self._sorted is None:
            self._sorted = sorted(self.terms.items(), key=lambda kv: kv[0])
        return self._sorted

    def support(self) -> list[GroupElement]:
        return [g for g, _ in self.items()]

    def lexmin(self) -> GroupElement:
        if not self.terms:
            raise ValueError("zero series has empty support")
        return min(self.terms)

    def leading(self) -> tuple[GroupElement, FieldElement]:
        return self.items()[0]

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def max_index(self) -> int:
        return max((g.max_index() for g in self.terms), default=0)

    def coefficient(self, g: GroupElement) -> FieldElement:
        return self.terms.get(g, FieldElement.rational(self.basis, 0))

    def _coerce(self, other):
        if isinstance(other, SeriesElement):
            if other.basis != self.basis:
                raise StructureError("basis mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesElement.scalar(self.basis, other)
        if isinstance(other, FieldElement):
            return SeriesElement.monomial(other, GroupElement.identity())
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return SeriesElement._raw(self.basis, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_mul(other, self)

    def __pow__(self, k: int):
        if k < 0:
            return exact_inverse(self) ** (-k)
        result = SeriesElement.one(self.basis)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = self._coerce(other)
        if not isinstance(other, SeriesElement):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"SeriesElement({format_series(self)})"

    def __str__(self):
        return format_series(self)


def series_add(a: SeriesElement, b: SeriesElement) -> SeriesElement:
    if a.basis != b.basis:
        raise StructureError("basis mismatch")
    terms = dict(a.terms)
    for g, c in b.terms.items():
        if g in terms:
            s = terms[g] + c
            if s:
                terms[g] = s
            else:
                del terms[g]
        else:
            terms[g] = c
    return SeriesElement._raw(a.basis, terms)


def series_mul(a: SeriesElement, b: SeriesElement) -> SeriesElement:
    if a.basis != b.basis:
        raise StructureError("basis mismatch")
    terms: dict[GroupElement, FieldElement] = {}
    for x, ax in a.terms.items():
        for y, by in b.terms.items():
            z = compose(x, y)
            v = ax * nf.apply_phi(x, by)
            if z in terms:
                terms[z] = terms[z] + v
            else:
                terms[z] = v
    return SeriesElement._raw(a.basis, {z: c for z, c in terms.items() if c})


def monomial_inverse(coeff: FieldElement, u: GroupElement) -> SeriesElement:
    """(c*u)^-1 = Phi_{u^-1}(c^-1) * u^-1."""
    u_inv = invert(u)
    return SeriesElement.monomial(nf.apply_phi(u_inv, nf.field_inv(coeff)), u_inv)


def exact_inverse(a: SeriesElement) -> SeriesElement:
    """Inverse inside the finite model, which exists only for monomials."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero series")
    if not a.is_monomial():
        raise NotInvertibleError(
            "finite series with more than one term has no finite inverse; "
            "use series_inv or the crossed model"
        )
    (u, c), = a.terms.items()
    return monomial_inverse(c, u)


def commutator(a: SeriesElement, b: SeriesElement) -> SeriesElement:
    """Multiplicative commutator a*b*a^-1*b^-1."""
    return a * b * exact_inverse(a) * exact_inverse(b)


def _min_group(a: Optional[GroupElement], b: Optional[GroupElement]) -> Optional[GroupElement]:
    if a is None:
        return b
    if b is None:
        return a
    return a if lex_compare(a, b) is Ordering.LT else b


@dataclass(frozen=True)
class TruncatedSeries:
    """Finite body standing in for a possibly infinite element.

    ``exact_below`` is a frontier f: every term of the true element at a
    position lex-below f is present in ``body`` with its exact coefficient;
    all discarded terms sit at positions >= f.  ``None`` means the body is the
    whole element.
    """

    body: SeriesElement
    window: int
    height_budget: Optional[int] = None
    exact_below: Optional[GroupElement] = None

    @property
    def basis(self) -> PrimeBasis:
        return self.body.basis

    @property
    def is_exact(self) -> bool:
        return self.exact_below is None

    @classmethod
    def exact(cls, body: SeriesElement, window: Optional[int] = None) -> "TruncatedSeries":
        if window is None:
            window = max(body.basis.level, body.max_index())
        return cls(body, window)

    def _lower_bound(self) -> Optional[GroupElement]:
        """A lex lower bound on the support of the true element."""
        lm = None if self.body.is_zero() else self.body.lexmin()
        return _min_group(lm, self.exact_below)

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, SeriesElement):
            return TruncatedSeries.exact(other, self.window)
        return TruncatedSeries.exact(self.body._coerce(other), self.window)

    def __add__(self, other):
        other = self._lift(other)
        return TruncatedSeries(
            self.body + other.body,
            max(self.window, other.window),
            _sum_budget(self, other),
            _min_group(self.exact_below, other.exact_below),
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.body, self.window, self.height_budget, self.exact_below)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        return _truncated_product(self, other)

    def __rmul__(self, other):
        return _truncated_product(self._lift(other), self)

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_exact:
                raise NotInvertibleError("cannot invert a truncated series")
            raise NotInvertibleError("use series_inv for inverses of truncated values")
        result = TruncatedSeries.exact(SeriesElement.one(self.basis), self.window)
        for _ in range(k):
            result = result * self
        return result

    def __str__(self):
        return format_series(self.body)


def _height_bound(t: TruncatedSeries) -> int:
    if t.height_budget is not None:
        return t.height_budget
    return max((g.height() for g in t.body.terms), default=0)


def _sum_budget(a: TruncatedSeries, b: TruncatedSeries) -> Optional[int]:
    if a.height_budget is None and b.height_budget is None:
        return None
    return max(_height_bound(a), _height_bound(b))


def _product_budget(a: TruncatedSeries, b: TruncatedSeries) -> Optional[int]:
    # heights are subadditive under composition
    if a.height_budget is None and b.height_budget is None:
        return None
    return _height_bound(a) + _height_bound(b)


def _truncated_product(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    body = a.body * b.body
    frontier = None
    if a.exact_below is not None or b.exact_below is not None:
        la, lb = a._lower_bound(), b._lower_bound()
        if a.exact_below is not None and lb is not None:
            frontier = _min_group(frontier, compose(a.exact_below, lb))
        if b.exact_below is not None and la is not None:
            frontier = _min_group(frontier, compose(la, b.exact_below))
    return TruncatedSeries(
        body, max(a.window, b.window), _product_budget(a, b), frontier
    )


def _truncate_height(s: SeriesElement, height: Optional[int]):
    """Drop terms above the height budget; return the kept part and lowest dropped position."""
    if height is None:
        return s, None
    kept, dropped = {}, None
    for g, c in s.terms.items():
        if g.height() <= height:
            kept[g] = c
        else:
            dropped = _min_group(dropped, g)
    return SeriesElement._raw(s.basis, kept), dropped


def series_inv(
    a: SeriesElement,
    budget: int,
    window: Optional[int] = None,
    height_budget: Optional[int] = None,
) -> TruncatedSeries:
    """Truncated inverse by geometric expansion about the leading term.

    With u the lex-least support element and m = a_u*u, write a = m*(1 + eps)
    where every term of eps lies strictly above the identity.  The result is
    (sum_{k<=budget} (-eps)^k) * m^-1.  The frontier is lexmin(eps)^(budget+1)*u^-1,
    lowered further by any term removed for exceeding ``height_budget``.
    """
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero series")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if window is None:
        window = max(a.basis.level, a.max_index())
    if a.max_index() > window:
        raise WindowError(f"element uses generator x{a.max_index()} beyond window {window}")
    u, au = a.leading()
    m_inv = monomial_inverse(au, u)
    eps = m_inv * a - 1
    identity = GroupElement.identity()
    for g in eps.terms:
        if lex_compare(g, identity) is not Ordering.GT:
            raise NormalizationError(f"tail term {format_group(g)} is not above the identity")
    u_inv = invert(u)
    if eps.is_zero():
        body, dropped = _truncate_height(m_inv, height_budget)
        return TruncatedSeries(body, window, height_budget, dropped)

    neg = -eps
    acc = SeriesElement.one(a.basis)
    power = acc
    frontier = None
    for _ in range(budget):
        power, dropped = _truncate_height(power * neg, height_budget)
        if dropped is not None:
            frontier = _min_group(frontier, compose(dropped, u_inv))
        acc = acc + power
    tail_start = eps.lexmin() ** (budget + 1)
    frontier = _min_group(frontier, compose(tail_start, u_inv))
    body, dropped = _truncate_height(acc * m_inv, height_budget)
    frontier = _min_group(frontier, dropped)
    return TruncatedSeries(body, window, height_budget, frontier)


def residual(a: SeriesElement, inverse: TruncatedSeries | SeriesElement) -> SeriesElement:
    """a * inverse - 1, computed by actual multiplication."""
    body = inverse.body if isinstance(inverse, TruncatedSeries) else inverse
    return a * body - 1


def alpha_prefix(n: int, window: int, basis: Optional[PrimeBasis] = None) -> TruncatedSeries:
    """x_1^-1 + ... + x_n^-1 standing in for alpha = x_1^-1 + x_2^-1 + ...

    The omitted terms x_{n+1}^-1, x_{n+2}^-1, ... all lie at or above
    x_{n+1}^-1, which is the recorded frontier.
    """
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    if n > window:
        raise WindowError(f"prefix length {n} exceeds window {window}")
    if basis is None:
        basis = PrimeBasis.first(window)
    one = FieldElement.rational(basis, 1)
    body = SeriesElement._raw(basis, {GroupElement.gen(i, -1): one for i in range(1, n + 1)})
    return TruncatedSeries(body, window, 1, GroupElement.gen(n + 1, -1))


def split_at_generator(alpha: SeriesElement, i: int) -> tuple[SeriesElement, SeriesElement]:
    """Write alpha = beta*x_i + gamma with beta, gamma free of odd powers of x_i."""
    xi_inv = GroupElement.gen(i, -1)
    beta, gamma = {}, {}
    for g, c in alpha.terms.items():
        if g.exponent(i) % 2:
            # c*g = (c*g*x_i^-1) * x_i, and g*x_i^-1 has even x_i exponent
            beta[compose(g, xi_inv)] = c
        else:
            gamma[g] = c
    return SeriesElement._raw(alpha.basis, beta), SeriesElement._raw(alpha.basis, gamma)


def format_series(s: SeriesElement) -> str:
    """Canonical text, ascending lex; e.g. ``(1 + r1)*x1^-1 - 2*r2 + x1``."""
    if s.is_zero():
        return "0"
    parts = []
    for g, c in s.items():
        coeff_text = format_field(c)
        negative = False
        if len(c.terms) == 1:
            (mask, v), = c.terms.items()
            if v < 0:
                negative = True
                coeff_text = format_field(-c)
        else:
            coeff_text = f"({coeff_text})"
        if g.is_identity():
            body = coeff_text
        elif coeff_text == "1":
            body = format_group(g)
        else:
            body = f"{coeff_text}*{format_group(g)}"
        parts.append(("-" if negative else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
