from fractions import Fraction

import pytest
from hypothesis import given

from mnring import laurent
from mnring.laurent import (
    CentralFraction,
    LaurentPoly,
    central_context,
    format_fraction,
    format_laurent,
)
from mnring.linalg import bareiss_det, fraction_det, nullspace, rank, solve

from .conftest import MODELS, laurent_polys

M2 = MODELS[2]
ctx = M2.ctx


def t(i):
    return LaurentPoly.var(ctx, i - 1)


def F(p, d=None):
    return CentralFraction(p, d)


def c(v):
    return CentralFraction.constant(ctx, v)


class TestLaurent:
    def test_shift_is_canonical(self):
        a = LaurentPoly.from_terms(ctx, {(1, 0): 1, (2, 1): 3})
        b = t(1) * (LaurentPoly.constant(ctx, 1) + t(1) * t(2) * 3)
        assert a == b and hash(a) == hash(b)
        assert a.shift == (1, 0)

    def test_negative_exponents(self):
        a = LaurentPoly.from_terms(ctx, {(-2, 1): Fraction(1, 2), (0, -1): -1})
        assert a.terms() == {(-2, 1): Fraction(1, 2), (0, -1): Fraction(-1)}
        assert all(isinstance(e, int) for k in a.terms() for e in k)

    def test_monomial_flags(self):
        assert LaurentPoly.monomial(ctx, (-1, 3), 5).is_monomial()
        assert not (t(1) + t(2)).is_monomial()
        assert LaurentPoly.constant(ctx, 4).is_constant()
        assert not t(1).is_constant()

    def test_exquo(self):
        a = (t(1) + 1) * (t(2) - 2)
        assert a.exquo(t(1) + 1) == t(2) - 2

    def test_format(self):
        a = LaurentPoly.from_terms(ctx, {(2, 0): 3, (0, 0): -1, (-1, 1): Fraction(1, 2)})
        # descending lex on exponent vectors: (2,0) > (0,0) > (-1,1)
        assert format_laurent(a) == "3*t1^2 - 1 + 1/2*t1^-1*t2"
        assert format_laurent(LaurentPoly.zero(ctx)) == "0"

    def test_context_names(self):
        assert central_context(2, True).nvars() == 3
        assert central_context(0).nvars() == 1


class TestFraction:
    def test_cancellation(self):
        a = F((t(1) + 1) * (t(2) + 3), (t(1) + 1) * t(2))
        assert a == F(t(2) + 3, t(2))
        assert a.den == LaurentPoly.constant(ctx, 1)

    def test_inverse_and_division(self):
        a = F(t(1) + 2, t(2) - 1)
        assert a * a.inverse() == c(1)
        assert (a / a) == c(1)

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            c(0).inverse()

    def test_cross_multiplication_equality_without_gcd(self, monkeypatch):
        monkeypatch.setattr(laurent, "FULL_GCD", False)
        a = F((t(1) + 1) * (t(2) + 3), (t(1) + 1) * (t(1) - t(2)))
        b = F(t(2) + 3, t(1) - t(2))
        assert a == b and hash(a) == hash(b)

    def test_format_fraction(self):
        assert format_fraction(F(t(1), LaurentPoly.constant(ctx, 1))) == "t1"
        a = F(LaurentPoly.constant(ctx, 1), t(1) * 2 + 1)
        assert format_fraction(a) == "(2*t1 + 1)^-1"
        b = F(t(2) + 1, t(1) * Fraction(1, 3) + Fraction(1, 2))
        assert format_fraction(b) == "(6*t2 + 6)*(2*t1 + 3)^-1"


@given(laurent_polys(M2, 3), laurent_polys(M2, 3), laurent_polys(M2, 3))
def test_laurent_ring(a, b, d):
    assert (a * b) * d == a * (b * d)
    assert a * (b + d) == a * b + a * d
    assert a - a == LaurentPoly.zero(ctx)


@given(laurent_polys(M2), laurent_polys(M2), laurent_polys(M2), laurent_polys(M2))
def test_fraction_field(a, b, d, e):
    x, y = F(a, b), F(d, e)
    assert x + y == y + x
    assert x * (y + x) == x * y + x * x
    assert x * x.inverse() == c(1)
    assert (x / y) * y == x


def _frac_matrix(entries):
    return [[c(v) if not isinstance(v, CentralFraction) else v for v in row] for row in entries]


class TestLinalg:
    def test_det_rational(self):
        m = _frac_matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
        assert fraction_det(m) == c(18)

    def test_det_symbolic(self):
        T1, T2 = F(t(1)), F(t(2))
        m = [[T1, c(1)], [c(1), T2]]
        assert fraction_det(m) == T1 * T2 - c(1)

    def test_bareiss_poly(self):
        rows = [[t(1), LaurentPoly.constant(ctx, 1)], [t(2), t(1)]]
        assert bareiss_det(rows) == t(1) * t(1) - t(2)

    def test_det_row_swap(self):
        m = _frac_matrix([[0, 1], [1, 0]])
        assert fraction_det(m) == c(-1)

    def test_solve(self):
        T1 = F(t(1))
        m = [[T1, c(1)], [c(1), c(-1)]]
        x = solve(m, [c(1), c(0)])
        assert x[0] == x[1]
        assert T1 * x[0] + x[1] == c(1)

    def test_singular(self):
        m = _frac_matrix([[1, 2], [2, 4]])
        with pytest.raises(ArithmeticError):
            solve(m, [c(1), c(1)])
        assert rank(m) == 1

    def test_nullspace(self):
        T1 = F(t(1))
        m = [[T1, T1 * c(2), c(0)], [c(1), c(2), c(0)]]
        basis = nullspace(m)
        assert len(basis) == 2
        for v in basis:
            for row in m:
                s = c(0)
                for a, b in zip(row, v):
                    s = s + a * b
                assert s.is_zero()

    def test_zero_matrix(self):
        m = _frac_matrix([[0, 0], [0, 0]])
        assert fraction_det(m).is_zero()
        assert len(nullspace(m)) == 2 and rank(m) == 0


@given(laurent_polys(M2), laurent_polys(M2), laurent_polys(M2), laurent_polys(M2))
def test_det_2x2_closed_form(a, b, d, e):
    m = [[F(a), F(b)], [F(d), F(e)]]
    assert fraction_det(m) == F(a * e - b * d)
