"""Laurent polynomials and rational functions in the central variables.

The central variables are t_i = x_i^2 for i <= m and, in R-mode, one extra
transcendental s.  Polynomial arithmetic is delegated to flint's
``fmpq_mpoly``; this module owns the Laurent shift bookkeeping and the
fraction normal form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping

import flint

# Full multivariate gcd cancellation in CentralFraction.  With it off, only
# monomial factors and the leading coefficient are normalized and equality
# still holds by cross-multiplication.
FULL_GCD = True


def set_gcd_reduction(enabled: bool) -> None:
    global FULL_GCD
    FULL_GCD = bool(enabled)


@lru_cache(maxsize=None)
def central_context(m: int, with_s: bool = False) -> flint.fmpq_mpoly_ctx:
    names = tuple(f"t{i}" for i in range(1, m + 1)) + (("s",) if with_s else ())
    if not names:
        names = ("_unit",)
    return flint.fmpq_mpoly_ctx.get(names, "lex")


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _to_fraction(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class LaurentPoly:
    """t^shift * poly with poly not divisible by any variable."""

    __slots__ = ("ctx", "poly", "shift")

    def __init__(self, ctx, poly, shift: tuple[int, ...] | None = None):
        n = ctx.nvars()
        shift = tuple(shift) if shift is not None else (0,) * n
        if poly.is_zero():
            self.ctx, self.poly, self.shift = ctx, poly, (0,) * n
            return
        content = poly.term_content()
        exps = tuple(int(k) for k in content.monoms()[0])
        if any(exps):
            poly = poly / content
            shift = tuple(a + b for a, b in zip(shift, exps))
        self.ctx, self.poly, self.shift = ctx, poly, shift

    @classmethod
    def _raw(cls, ctx, poly, shift):
        obj = cls.__new__(cls)
        obj.ctx, obj.poly, obj.shift = ctx, poly, shift
        return obj

    @classmethod
    def from_terms(cls, ctx, terms: Mapping[tuple[int, ...], object]) -> "LaurentPoly":
        n = ctx.nvars()
        terms = {tuple(e): c for e, c in terms.items() if c}
        if not terms:
            return cls.zero(ctx)
        for e in terms:
            if len(e) != n:
                raise ValueError(f"exponent vector {e} has wrong length for {n} variables")
        low = tuple(min(e[i] for e in terms) for i in range(n))
        poly = ctx.from_dict(
            {tuple(a - b for a, b in zip(e, low)): _to_fmpq(c) for e, c in terms.items()}
        )
        return cls(ctx, poly, low)

    @classmethod
    def zero(cls, ctx) -> "LaurentPoly":
        return cls._raw(ctx, ctx.constant(0), (0,) * ctx.nvars())

    @classmethod
    def constant(cls, ctx, c) -> "LaurentPoly":
        c = _to_fmpq(c)
        return cls._raw(ctx, ctx.constant(c), (0,) * ctx.nvars())

    @classmethod
    def monomial(cls, ctx, exps, coeff=1) -> "LaurentPoly":
        exps = tuple(exps)
        if not coeff:
            return cls.zero(ctx)
        return cls._raw(ctx, ctx.constant(_to_fmpq(coeff)), exps)

    @classmethod
    def var(cls, ctx, i: int) -> "LaurentPoly":
        e = [0] * ctx.nvars()
        e[i] = 1
        return cls.monomial(ctx, e)

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        out = {}
        for e, c in self.poly.to_dict().items():
            out[tuple(int(a) + b for a, b in zip(e, self.shift))] = _to_fraction(c)
        return out

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_constant(self) -> bool:
        return self.poly.is_constant() and not any(self.shift)

    def is_monomial(self) -> bool:
        # canonical poly is a nonzero constant exactly for single-term values
        return self.poly.is_constant() and not self.poly.is_zero()

    def constant_value(self) -> Fraction:
        if not self.poly.is_constant():
            raise ValueError("not a constant")
        if self.poly.is_zero():
            return Fraction(0)
        if any(self.shift):
            raise ValueError("not a constant")
        return _to_fraction(self.poly.leading_coefficient())

    def _check(self, other: "LaurentPoly"):
        if self.ctx is not other.ctx:
            raise ValueError("Laurent polynomials over different variable sets")

    def _align(self, other: "LaurentPoly"):
        low = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        p = self.poly if self.shift == low else self.poly * _mono(self.ctx, _sub(self.shift, low))
        q = other.poly if other.shift == low else other.poly * _mono(self.ctx, _sub(other.shift, low))
        return p, q, low

    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.ctx, other)
        if self.poly.is_zero():
            return other
        if other.poly.is_zero():
            return self
        self._check(other)
        p, q, low = self._align(other)
        return LaurentPoly(self.ctx, p + q, low)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.ctx, -self.poly, self.shift)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly._raw(self.ctx, self.poly * _to_fmpq(other), self.shift) if other else LaurentPoly.zero(self.ctx)
        self._check(other)
        if self.poly.is_zero() or other.poly.is_zero():
            return LaurentPoly.zero(self.ctx)
        return LaurentPoly._raw(self.ctx, self.poly * other.poly, _add(self.shift, other.shift))

    __rmul__ = __mul__

    def exquo(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in the Laurent ring; raises if not exact."""
        if other.poly.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.poly.is_zero():
            return self
        return LaurentPoly._raw(self.ctx, self.poly / other.poly, _sub(self.shift, other.shift))

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial; use CentralFraction")
        return LaurentPoly._raw(self.ctx, self.poly ** k, tuple(a * k for a in self.shift))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.shift == other.shift and self.poly == other.poly

    def __hash__(self):
        return hash((self.shift, tuple(sorted((e, str(c)) for e, c in self.poly.to_dict().items()))))

    def __bool__(self):
        return not self.poly.is_zero()

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)})"


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono(ctx, exps):
    return ctx.from_dict({tuple(exps): 1})


class CentralFraction:
    """num/den over the central variables, den normalized monic with no monomial factor."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        ctx = num.ctx
        if den is None:
            self.num, self.den = num, LaurentPoly.constant(ctx, 1)
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        p, q = num.poly, den.poly
        shift = _sub(num.shift, den.shift)
        if p.is_zero():
            self.num, self.den = LaurentPoly.zero(ctx), LaurentPoly.constant(ctx, 1)
            return
        if FULL_GCD and not q.is_constant():
            g = p.gcd(q)
            if not g.is_constant():
                p, q = p / g, q / g
        lc = q.leading_coefficient()
        if lc != 1:
            p, q = p / lc, q / lc
        self.num = LaurentPoly(ctx, p, shift)
        self.den = LaurentPoly._raw(ctx, q, (0,) * ctx.nvars())

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def constant(cls, ctx, c) -> "CentralFraction":
        return cls(LaurentPoly.constant(ctx, c))

    @classmethod
    def zero(cls, ctx) -> "CentralFraction":
        return cls(LaurentPoly.zero(ctx))

    @classmethod
    def one(cls, ctx) -> "CentralFraction":
        return cls(LaurentPoly.constant(ctx, 1))

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        """True when the value is a Laurent polynomial (den is 1)."""
        return self.den.poly.is_one()

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant() or self.num.is_zero()

    def constant_value(self) -> Fraction:
        if not self.is_polynomial():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def _other(self, other) -> "CentralFraction":
        if isinstance(other, CentralFraction):
            return other
        if isinstance(other, LaurentPoly):
            return CentralFraction(other)
        return CentralFraction.constant(self.ctx, other)

    def __add__(self, other) -> "CentralFraction":
        other = self._other(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.is_polynomial() and other.is_polynomial():
            return CentralFraction._raw(self.num + other.num, self.den)
        if self.den == other.den:
            return CentralFraction(self.num + other.num, self.den)
        return CentralFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "CentralFraction":
        return CentralFraction._raw(-self.num, self.den)

    def __sub__(self, other) -> "CentralFraction":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "CentralFraction":
        return self._other(other) - self

    def __mul__(self, other) -> "CentralFraction":
        if isinstance(other, (int, Fraction)):
            if not other:
                return CentralFraction.zero(self.ctx)
            return CentralFraction._raw(self.num * other, self.den)
        other = self._other(other)
        if self.is_polynomial() and other.is_polynomial():
            return CentralFraction._raw(self.num * other.num, self.den)
        return CentralFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CentralFraction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero central fraction")
        return CentralFraction(self.den, self.num)

    def __truediv__(self, other) -> "CentralFraction":
        return self * self._other(other).inverse()

    def __rtruediv__(self, other) -> "CentralFraction":
        return self._other(other) * self.inverse()

    def __pow__(self, k: int) -> "CentralFraction":
        if k < 0:
            return self.inverse() ** (-k)
        return CentralFraction._raw(self.num ** k, self.den ** k) if k else CentralFraction.one(self.ctx)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CentralFraction.constant(self.ctx, other)
        if not isinstance(other, CentralFraction):
            return NotImplemented
        # cross-multiplication keeps equality correct when gcd reduction is off
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if FULL_GCD:
            return hash((self.num, self.den))
        return hash(CentralFraction._reduced_key(self))

    @staticmethod
    def _reduced_key(f):
        g = f.num.poly.gcd(f.den.poly)
        p, q = f.num.poly / g, f.den.poly / g
        lc = q.leading_coefficient()
        return LaurentPoly(f.ctx, p / lc, f.num.shift), LaurentPoly(f.ctx, q / lc)

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"CentralFraction({format_fraction(self)})"

    def __str__(self):
        return format_fraction(self)


def format_laurent(p: LaurentPoly) -> str:
    """Terms by descending lex exponent; variables named after the context."""
    names = p.ctx.names()
    if p.is_zero():
        return "0"
    items = sorted(p.terms().items(), reverse=True)
    parts = []
    for e, c in items:
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        mag = abs(c)
        coeff = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if not factors:
            body = coeff
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = coeff + "*" + "*".join(factors)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _primitive_scale(p: LaurentPoly) -> Fraction:
    """c with c*p having coprime integer coefficients and positive leading term."""
    coeffs = [_to_fraction(c) for c in p.poly.coeffs()]
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    num_gcd = 0
    for c in coeffs:
        num_gcd = gcd(num_gcd, (c * den_lcm).numerator)
    scale = Fraction(den_lcm, num_gcd)
    return scale if coeffs[0] > 0 else -scale


def format_fraction(f: CentralFraction) -> str:
    """Polynomial values print as polynomials, others as ``num*(den)^-1`` with integral den."""
    if f.is_polynomial():
        return format_laurent(f.num)
    c = _primitive_scale(f.den)
    num, den = f.num * c, f.den * c
    num_text = format_laurent(num)
    if num_text == "1":
        return f"({format_laurent(den)})^-1"
    if not num.is_monomial():
        num_text = f"({num_text})"
    return f"{num_text}*({format_laurent(den)})^-1"
