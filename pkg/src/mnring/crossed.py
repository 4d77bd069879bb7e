"""Level-m crossed-product model of L_m (and of R_m in R-mode).

Elements are normal forms sum c_{eps,mu} * r^eps * x^mu over the basis B_m of
4^m monomials r^eps x^mu (eps, mu in {0,1}^m), where r_i = sqrt(p_i) and the
coefficients c live in the central field Q(t_1, ..., t_m[, s]) with
t_i = x_i^2.  Relations: r_i^2 = p_i, x_i^2 = t_i, x_i r_i = -r_i x_i, and
everything else commutes.

Basis order is by the pair (eps, mu) of little-endian masks, eps major:
index(eps, mu) = eps * 2^m + mu.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from . import linalg
from .grp import GroupElement
from .laurent import CentralFraction, LaurentPoly, central_context
from .numfield import FieldElement, PrimeBasis, StructureError, WindowError, popcount
from .radpoly import rp_bareiss_det, rp_conj, rp_cofactor, rp_mul, rp_norm, rp_solve
from .series import SeriesElement


@dataclass(frozen=True)
class CrossedModel:
    """Level, primes and mode shared by a family of crossed elements."""

    basis: PrimeBasis
    with_s: bool = False

    @classmethod
    def first(cls, m: int, with_s: bool = False) -> "CrossedModel":
        return cls(PrimeBasis.first(m), with_s)

    @property
    def level(self) -> int:
        return self.basis.level

    @property
    def dimension(self) -> int:
        return 4 ** self.level

    @cached_property
    def ctx(self):
        return central_context(self.level, self.with_s)

    @property
    def nvars(self) -> int:
        return self.ctx.nvars()

    def keys(self) -> list[tuple[int, int]]:
        """B_m in basis order."""
        n = 1 << self.level
        return [(e, u) for e in range(n) for u in range(n)]

    def index(self, key: tuple[int, int]) -> int:
        return (key[0] << self.level) | key[1]

    def t_exponents(self, mu_mask: int) -> tuple[int, ...]:
        e = [0] * self.nvars
        for i in range(self.level):
            if (mu_mask >> i) & 1:
                e[i] = 1
        return tuple(e)

    # constructors
    def element(self, terms: Mapping[tuple[int, int], object]) -> "CrossedElement":
        return CrossedElement(self, terms)

    def scalar(self, value) -> "CrossedElement":
        if isinstance(value, CentralFraction):
            return CrossedElement(self, {(0, 0): value})
        if isinstance(value, LaurentPoly):
            return CrossedElement(self, {(0, 0): CentralFraction(value)})
        return CrossedElement(self, {(0, 0): CentralFraction.constant(self.ctx, value)})

    def one(self) -> "CrossedElement":
        return self.scalar(1)

    def zero(self) -> "CrossedElement":
        return CrossedElement(self, {})

    def _check_index(self, i: int):
        if not 1 <= i <= self.level:
            raise WindowError(f"index {i} outside level {self.level}")

    def radical(self, i: int) -> "CrossedElement":
        self._check_index(i)
        return CrossedElement(self, {(1 << (i - 1), 0): CentralFraction.one(self.ctx)})

    def gen(self, i: int) -> "CrossedElement":
        self._check_index(i)
        return CrossedElement(self, {(0, 1 << (i - 1)): CentralFraction.one(self.ctx)})

    def t(self, i: int) -> "CrossedElement":
        self._check_index(i)
        return self.scalar(LaurentPoly.var(self.ctx, i - 1))

    def s(self) -> "CrossedElement":
        if not self.with_s:
            raise StructureError("s (alpha_n) exists only in R-mode")
        return self.scalar(LaurentPoly.var(self.ctx, self.level))

    def alpha(self) -> "CrossedElement":
        """alpha = x_1^-1 + ... + x_m^-1 + alpha_m, with x_i^-1 = x_i / t_i."""
        out = self.s()
        for i in range(1, self.level + 1):
            out = out + self.gen(i) * self.t(i).inverse()
        return out

    def generators(self) -> list["CrossedElement"]:
        gens = []
        for i in range(1, self.level + 1):
            gens.append(self.radical(i))
            gens.append(self.gen(i))
        return gens

    def basis_element(self, key: tuple[int, int]) -> "CrossedElement":
        return CrossedElement(self, {key: CentralFraction.one(self.ctx)})


class CrossedElement:
    __slots__ = ("model", "terms")

    def __init__(self, model: CrossedModel, terms: Mapping[tuple[int, int], object] | None = None):
        self.model = model
        n = 1 << model.level
        clean = {}
        for (e, u), c in (terms or {}).items():
            if not (0 <= e < n and 0 <= u < n):
                raise WindowError(f"monomial ({e:b}, {u:b}) outside level {model.level}")
            if not isinstance(c, CentralFraction):
                c = CentralFraction(c) if isinstance(c, LaurentPoly) else CentralFraction.constant(model.ctx, c)
            elif c.ctx is not model.ctx:
                raise StructureError("coefficient over a different central field")
            if not c.is_zero():
                clean[(e, u)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, model, terms):
        obj = cls.__new__(cls)
        obj.model = model
        obj.terms = terms
        return obj

    @property
    def level(self) -> int:
        return self.model.level

    @property
    def with_s(self) -> bool:
        return self.model.with_s

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key) -> CentralFraction:
        return self.terms.get(key, CentralFraction.zero(self.model.ctx))

    def items(self):
        return sorted(self.terms.items())

    def scalar_value(self) -> CentralFraction | None:
        """The coefficient if the element lies in the central field, else None."""
        if not self.terms:
            return CentralFraction.zero(self.model.ctx)
        if set(self.terms) == {(0, 0)}:
            return self.terms[(0, 0)]
        return None

    def _coerce(self, other):
        if isinstance(other, CrossedElement):
            if other.model != self.model:
                raise StructureError("level/mode mismatch between crossed elements")
            return other
        if isinstance(other, (int, Fraction, CentralFraction, LaurentPoly)):
            return self.model.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, c in other.terms.items():
            if k in terms:
                v = terms[k] + c
                if v.is_zero():
                    del terms[k]
                else:
                    terms[k] = v
            else:
                terms[k] = c
        return CrossedElement._raw(self.model, terms)

    __radd__ = __add__

    def __neg__(self):
        return CrossedElement._raw(self.model, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return crossed_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return crossed_mul(other, self)

    def inverse(self) -> "CrossedElement":
        return crossed_inv(self)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return crossed_mul(self, crossed_inv(other))

    def __pow__(self, k: int):
        if k < 0:
            return crossed_inv(self) ** (-k)
        result = self.model.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CentralFraction, LaurentPoly)):
            other = self.model.scalar(other)
        if not isinstance(other, CrossedElement):
            return NotImplemented
        if self.model != other.model or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        from .expr import format_crossed

        return f"CrossedElement({format_crossed(self)})"

    def __str__(self):
        from .expr import format_crossed

        return format_crossed(self)


def monomial_mul(eps: int, mu: int, eps2: int, mu2: int, model: CrossedModel):
    """(r^eps x^mu)(r^eps2 x^mu2) = sign * correction * r^(eps^eps2) x^(mu^mu2).

    Moving x^mu past r^eps2 picks up (-1)^{mu . eps2}; shared radicals give
    p_i and shared generators give t_i.
    """
    sign = -1 if popcount(mu & eps2) & 1 else 1
    correction = LaurentPoly.monomial(
        model.ctx, model.t_exponents(mu & mu2), model.basis.radical_square(eps & eps2)
    )
    return sign, eps ^ eps2, mu ^ mu2, correction


def _scaled(c: CentralFraction, factor: int, texps: tuple[int, ...]) -> CentralFraction:
    num = c.num
    shift = tuple(a + b for a, b in zip(num.shift, texps)) if any(texps) else num.shift
    poly = num.poly * factor if factor != 1 else num.poly
    return CentralFraction._raw(LaurentPoly._raw(num.ctx, poly, shift), c.den)


def crossed_mul(a: CrossedElement, b: CrossedElement) -> CrossedElement:
    if a.model != b.model:
        raise StructureError("level/mode mismatch between crossed elements")
    model = a.model
    primes = model.basis
    out: dict[tuple[int, int], CentralFraction] = {}
    for (e1, u1), c1 in a.terms.items():
        for (e2, u2), c2 in b.terms.items():
            factor = primes.radical_square(e1 & e2)
            if popcount(u1 & e2) & 1:
                factor = -factor
            v = _scaled(c1 * c2, factor, model.t_exponents(u1 & u2))
            key = (e1 ^ e2, u1 ^ u2)
            if key in out:
                out[key] = out[key] + v
            else:
                out[key] = v
    return CrossedElement._raw(model, {k: c for k, c in out.items() if not c.is_zero()})


def left_matrix(a: CrossedElement) -> list[list[CentralFraction]]:
    """Matrix of v -> a*v in the B_m basis (column j is a * b_j)."""
    model = a.model
    keys = model.keys()
    zero = CentralFraction.zero(model.ctx)
    n = len(keys)
    M = [[zero] * n for _ in range(n)]
    for j, key in enumerate(keys):
        col = crossed_mul(a, model.basis_element(key))
        for k, c in col.terms.items():
            M[model.index(k)][j] = c
    return M


def right_matrix(a: CrossedElement) -> list[list[CentralFraction]]:
    """Matrix of v -> v*a in the B_m basis."""
    model = a.model
    keys = model.keys()
    zero = CentralFraction.zero(model.ctx)
    n = len(keys)
    M = [[zero] * n for _ in range(n)]
    for j, key in enumerate(keys):
        col = crossed_mul(model.basis_element(key), a)
        for k, c in col.terms.items():
            M[model.index(k)][j] = c
    return M


def from_vector(model: CrossedModel, v) -> CrossedElement:
    return CrossedElement(model, {key: c for key, c in zip(model.keys(), v)})


def to_vector(a: CrossedElement) -> list[CentralFraction]:
    zero = CentralFraction.zero(a.model.ctx)
    return [a.terms.get(k, zero) for k in a.model.keys()]


def crossed_inv(a: CrossedElement, method: str = "tower") -> CrossedElement:
    """Two-sided inverse of a nonzero element; the result is multiplied back.

    ``method="tower"`` solves a v = 1 as a 2^m x 2^m system over the radical
    field K(t) (see ``regular_norm``), fraction-free after scaling a by a
    central common denominator.  ``method="linear"`` solves L_a v = e_1 over
    the central field on the full 4^m-dimensional algebra.
    """
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero crossed element")
    if method not in ("tower", "linear"):
        raise ValueError(f"unknown inverse method {method!r}")
    model = a.model
    if len(a.terms) == 1:
        ((e, u), c), = a.terms.items()
        # (c r^e x^u)^-1 = x^u r^e / (c * p^e * t^u), rewritten in normal form
        back = crossed_mul(model.basis_element((0, u)), model.basis_element((e, 0)))
        scale = c * CentralFraction(
            LaurentPoly.monomial(model.ctx, model.t_exponents(u), model.basis.radical_square(e))
        )
        result = crossed_mul(back, model.scalar(scale.inverse()))
    elif method == "tower":
        result = _tower_inverse(a)
    else:
        n = model.dimension
        rhs = [CentralFraction.zero(model.ctx)] * n
        rhs[0] = CentralFraction.one(model.ctx)
        try:
            v = linalg.solve(left_matrix(a), rhs)
        except ArithmeticError as exc:  # pragma: no cover - would contradict the division-ring property
            raise AssertionError(f"left-multiplication matrix singular for nonzero {a}") from exc
        result = from_vector(model, v)
    if crossed_mul(a, result) != model.one():
        raise AssertionError("crossed_inv failed multiply-back")
    return result


def _tower_inverse(a: CrossedElement) -> CrossedElement:
    # a = P / D with P over K[t]; a^-1 = P^-1 D, and P^-1 = sum_nu x^nu v_nu
    model = a.model
    D, scaled = _scaled_terms(a)
    n = 1 << model.level
    one = LaurentPoly.constant(model.ctx, 1)
    rhs = [{0: one} if k == 0 else {} for k in range(n)]
    try:
        y, d = rp_solve(_right_space_matrix(scaled, model), rhs, model.basis)
    except ArithmeticError as exc:  # pragma: no cover - would contradict the division-ring property
        raise AssertionError(f"radical-field system singular for nonzero {a}") from exc
    # v_nu = y_nu / d = y_nu * cofactor(d) / N(d).  N(d) is typically a high
    # power of the true denominator, so cancel the common gcd once up front
    cof = rp_cofactor(d, model.basis)
    norm = rp_norm(d, model.basis)
    raw = {}
    for nu, yv in enumerate(y):
        for e, c in rp_mul(yv, cof, model.basis).items():
            # x^nu r^e = (-1)^{|nu & e|} r^e x^nu
            raw[(e, nu)] = -c if popcount(nu & e) & 1 else c
    g = norm.poly
    for c in sorted(raw.values(), key=lambda c: len(c.poly)):
        g = g.gcd(c.poly)
        if g.is_constant():
            break
    g = LaurentPoly(model.ctx, g)
    den = norm.exquo(g)
    terms = {}
    for key, c in raw.items():
        num = c.exquo(g)
        terms[key] = CentralFraction(num if D is None else num * D, den)
    return CrossedElement(model, terms)


def crossed_commutator(a: CrossedElement, b: CrossedElement) -> CrossedElement:
    return a * b * crossed_inv(a) * crossed_inv(b)


def commutes(a: CrossedElement, b: CrossedElement) -> bool:
    return crossed_mul(a, b) == crossed_mul(b, a)


def is_central(a: CrossedElement) -> bool:
    return all(commutes(a, g) for g in a.model.generators())


def is_torsion_central(c: CrossedElement) -> bool:
    """A central element has finite order iff it is +1 or -1."""
    if not is_central(c):
        raise ValueError("is_torsion_central requires a central element")
    value = c.scalar_value()
    if value is None:  # pragma: no cover - center is the coefficient field
        raise AssertionError("central element outside the coefficient field")
    return value == 1 or value == -1


def noncommuting_witnesses(a: CrossedElement) -> set[int]:
    """Indices i <= m whose radical sqrt(p_i) fails to commute with a."""
    model = a.model
    return {i for i in range(1, model.level + 1) if not commutes(a, model.radical(i))}


def mu_support(a: CrossedElement) -> set[int]:
    """Indices i with mu_i = 1 in some term of a."""
    mask = 0
    for _, u in a.terms:
        mask |= u
    return {i + 1 for i in range(a.level) if (mask >> i) & 1}


def regular_norm(a: CrossedElement, method: str = "tower") -> CentralFraction:
    """Determinant of left multiplication by a on the 4^m-dimensional algebra.

    ``method="bareiss"`` eliminates the full 4^m x 4^m matrix over the
    central field.  ``method="tower"`` views the algebra as a right vector
    space over the radical field K(t) with basis x^mu; left multiplication is
    K(t)-linear there, and its determinant over Q(t) is the norm
    N_{K(t)/Q(t)} of the 2^m x 2^m determinant over K(t).  The tower route
    first scales a by a central common denominator D, so all of its
    arithmetic is fraction-free, and divides by D^(4^m) at the end.
    """
    model = a.model
    if a.is_zero():
        return CentralFraction.zero(model.ctx)
    if method == "bareiss":
        return linalg.fraction_det(left_matrix(a))
    if method != "tower":
        raise ValueError(f"unknown norm method {method!r}")
    D, scaled = _scaled_terms(a)
    det = rp_bareiss_det(_right_space_matrix(scaled, model), model.basis)
    if not det:
        return CentralFraction.zero(model.ctx)
    value = CentralFraction(rp_norm(det, model.basis))
    if D is not None:
        value = value / CentralFraction(D ** model.dimension)
    return value


def _scaled_terms(a: CrossedElement) -> tuple[LaurentPoly | None, dict]:
    """Central D and the terms of D*a, all of them Laurent polynomials."""
    D = _common_denominator(a)
    scaled = {}
    for key, c in a.terms.items():
        scaled[key] = c.num if D is None else c.num * LaurentPoly(a.model.ctx, D.poly / c.den.poly)
    return D, scaled


def _common_denominator(a: CrossedElement) -> LaurentPoly | None:
    lcm = None
    for c in a.terms.values():
        if c.is_polynomial():
            continue
        d = c.den.poly
        lcm = d if lcm is None else lcm * (d / lcm.gcd(d))
    return None if lcm is None else LaurentPoly(a.model.ctx, lcm)


def _right_space_matrix(terms: dict, model: CrossedModel) -> list[list[dict]]:
    """Matrix over K[t] of v -> a*v, the algebra viewed as sum_nu x^nu K(t).

    With a = sum_mu a_mu x^mu (a_mu in K[t]),
    a_mu x^mu x^nu = x^(mu^nu) Phi_{mu^nu}(a_mu) t^(mu&nu).
    """
    n = 1 << model.level
    parts = [{} for _ in range(n)]
    for (e, u), c in terms.items():
        parts[u][e] = c
    M = [[{} for _ in range(n)] for _ in range(n)]
    for nu in range(n):
        for mu in range(n):
            if not parts[mu]:
                continue
            rho = mu ^ nu
            entry = rp_conj(parts[mu], rho)
            if mu & nu:
                shift = LaurentPoly.monomial(model.ctx, model.t_exponents(mu & nu))
                entry = {e: c * shift for e, c in entry.items()}
            M[rho][nu] = entry
    return M


def center_basis(model: CrossedModel) -> list[CrossedElement]:
    """Basis of {a : a g = g a for every generator g}, by a linear solve."""
    if model.level < 1:
        raise ValueError("center_basis needs level >= 1")
    rows = []
    for g in model.generators():
        L, R = left_matrix(g), right_matrix(g)
        for lrow, rrow in zip(L, R):
            rows.append([x - y for x, y in zip(lrow, rrow)])
    return [from_vector(model, v) for v in linalg.nullspace(rows)]


def dim_over_center(model_or_level, with_s: bool = False) -> int:
    """Rank of the monomials of B_m over the coefficient field.

    The monomials are built as products of generators and their coordinate
    vectors ranked by elimination, so the answer is computed rather than
    read off as 4^m.
    """
    model = (
        model_or_level
        if isinstance(model_or_level, CrossedModel)
        else CrossedModel.first(model_or_level, with_s)
    )
    m = model.level
    if m == 0:
        return 1
    vectors = []
    for e, u in model.keys():
        mono = model.one()
        for i in range(1, m + 1):
            if (e >> (i - 1)) & 1:
                mono = mono * model.radical(i)
        for i in range(1, m + 1):
            if (u >> (i - 1)) & 1:
                mono = mono * model.gen(i)
        vectors.append(to_vector(mono))
    return linalg.rank(vectors)


def to_series(a: CrossedElement) -> SeriesElement:
    """Embed into the twisted series model via t_i -> x_i^2.

    Only Laurent-polynomial coefficients and L-mode are embeddable.
    """
    if a.with_s:
        raise StructureError("R-mode elements involve alpha_n and have no finite series form")
    model = a.model
    basis = model.basis
    terms: dict[GroupElement, FieldElement] = {}
    for (e, u), c in a.terms.items():
        if not c.is_polynomial():
            raise StructureError("coefficient is not a Laurent polynomial")
        for texps, q in c.num.terms().items():
            exps = {}
            for i in range(model.level):
                n = 2 * texps[i] + ((u >> i) & 1)
                if n:
                    exps[i + 1] = n
            g = GroupElement(exps)
            coeff = FieldElement(basis, {e: q})
            terms[g] = terms[g] + coeff if g in terms else coeff
    return SeriesElement(basis, terms)


def from_series(s: SeriesElement, model: CrossedModel) -> CrossedElement:
    """Inverse of :func:`to_series`: x^n = x^mu * t^k with n = mu + 2k, mu in {0,1}."""
    if model.basis != s.basis or model.with_s:
        raise StructureError("series basis does not match the L-mode model")
    if s.max_index() > model.level:
        raise WindowError(f"series uses x{s.max_index()} beyond level {model.level}")
    out = model.zero()
    for g, coeff in s.terms.items():
        u = 0
        texps = [0] * model.nvars
        for i, n in g.exponents:
            u |= (n & 1) << (i - 1)
            texps[i - 1] = n >> 1
        for e, q in coeff.terms.items():
            # r^e (x^u t^k): coefficient sits on the left of r^e x^u
            out = out + CrossedElement(model, {(e, u): LaurentPoly.monomial(model.ctx, texps, q)})
    return out
