"""Polynomials over the radical field: K_m[t^+-1] as maps mask -> LaurentPoly.

This is the commutative domain in which the norm computation runs
fraction-free.  Exact division goes through the field norm,
a / b = a * conj(b) / N(b), where conj(b) is the product of the nontrivial
Galois conjugates of b and N(b) lies in the central Laurent ring.
"""

from __future__ import annotations

from typing import Sequence

from .laurent import LaurentPoly
from .numfield import PrimeBasis, popcount

RadPoly = dict  # mask -> LaurentPoly, zero entries never stored


def rp_add(a: RadPoly, b: RadPoly) -> RadPoly:
    out = dict(a)
    for e, c in b.items():
        s = out[e] + c if e in out else c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def rp_neg(a: RadPoly) -> RadPoly:
    return {e: -c for e, c in a.items()}


def rp_sub(a: RadPoly, b: RadPoly) -> RadPoly:
    return rp_add(a, rp_neg(b))


def rp_mul(a: RadPoly, b: RadPoly, basis: PrimeBasis) -> RadPoly:
    out: RadPoly = {}
    for e, c in a.items():
        for f, d in b.items():
            k = e ^ f
            v = c * d
            common = e & f
            if common:
                v = v * basis.radical_square(common)
            out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def rp_conj(a: RadPoly, parity: int) -> RadPoly:
    """Galois action r^eps -> (-1)^{eps . parity} r^eps."""
    if not parity:
        return a
    return {e: (-c if popcount(e & parity) & 1 else c) for e, c in a.items()}


def rp_cofactor(a: RadPoly, basis: PrimeBasis) -> RadPoly:
    """Product of the nontrivial conjugates, so a * cofactor = N(a)."""
    out = {0: LaurentPoly.constant(_ctx_of(a), 1)}
    for parity in range(1, 1 << basis.level):
        out = rp_mul(out, rp_conj(a, parity), basis)
    return out


def rp_norm(a: RadPoly, basis: PrimeBasis) -> LaurentPoly:
    """N_{K(t)/Q(t)}(a) as a central Laurent polynomial."""
    if not a:
        raise ZeroDivisionError("norm of zero")
    full = rp_mul(a, rp_cofactor(a, basis), basis)
    if set(full) - {0}:  # pragma: no cover - conjugate product is Galois-fixed
        raise AssertionError("conjugate product has radical terms")
    return full[0]


class _Divisor:
    """Precomputed cofactor and norm for repeated exact division by b."""

    def __init__(self, b: RadPoly, basis: PrimeBasis):
        self.basis = basis
        self.cofactor = rp_cofactor(b, basis)
        full = rp_mul(b, self.cofactor, basis)
        self.norm = full[0]

    def exquo(self, a: RadPoly) -> RadPoly:
        if not a:
            return a
        num = rp_mul(a, self.cofactor, self.basis)
        return {e: c.exquo(self.norm) for e, c in num.items()}


def _eliminate(A: list[list[RadPoly]], n: int, basis: PrimeBasis) -> int | None:
    """In-place Bareiss elimination of the first n columns; returns the swap sign.

    Returns None when some column has no pivot (singular leading block).
    """
    width = len(A[0])
    sign = 1
    prev = None
    for k in range(n - 1):
        p = next((i for i in range(k, n) if A[i][k]), None)
        if p is None:
            return None
        if p != k:
            A[p], A[k] = A[k], A[p]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, width):
                v = rp_sub(rp_mul(A[i][j], piv, basis), rp_mul(A[i][k], A[k][j], basis))
                A[i][j] = prev.exquo(v) if prev is not None else v
            A[i][k] = {}
        prev = _Divisor(piv, basis)
    if not A[n - 1][n - 1]:
        return None
    return sign


def rp_bareiss_det(M: Sequence[Sequence[RadPoly]], basis: PrimeBasis) -> RadPoly:
    """Determinant over K(t) of a square matrix with entries in K[t^+-1].

    Fraction-free elimination: every intermediate is a minor of M, so each
    division by the previous pivot is exact in the domain.
    """
    A = [list(row) for row in M]
    n = len(A)
    sign = _eliminate(A, n, basis)
    if sign is None:
        return {}
    det = A[n - 1][n - 1]
    return rp_neg(det) if sign < 0 else det


def rp_solve(M: Sequence[Sequence[RadPoly]], rhs: Sequence[RadPoly], basis: PrimeBasis):
    """Solve M x = rhs over K(t); returns (y, d) with x = y / d and d != 0.

    After Bareiss elimination the last pivot d is +-det M, and by Cramer's
    rule y_i = d * x_i lies in the domain, so fraction-free back substitution
    divides exactly.  Raises ArithmeticError if M is singular.
    """
    n = len(M)
    A = [list(row) + [b] for row, b in zip(M, rhs)]
    if _eliminate(A, n, basis) is None:
        raise ArithmeticError("singular system over the radical field")
    d = A[n - 1][n - 1]
    y: list[RadPoly] = [{} for _ in range(n)]
    y[n - 1] = A[n - 1][n]
    for i in reversed(range(n - 1)):
        acc = rp_mul(d, A[i][n], basis) if A[i][n] else {}
        for j in range(i + 1, n):
            if A[i][j] and y[j]:
                acc = rp_sub(acc, rp_mul(A[i][j], y[j], basis))
        y[i] = _Divisor(A[i][i], basis).exquo(acc)
    return y, d


def _ctx_of(a: RadPoly):
    return next(iter(a.values())).ctx
