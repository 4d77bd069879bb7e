"""Fraction-free (Bareiss) elimination over the Laurent polynomial ring.

Matrices are lists of rows.  Entries given as CentralFraction are first
brought to a common denominator row by row, so elimination only ever
multiplies and divides exactly; fractions reappear only during back
substitution.
"""

from __future__ import annotations

from typing import Sequence

from .laurent import CentralFraction, LaurentPoly


def clear_denominators(rows: Sequence[Sequence[CentralFraction]]):
    """Return (poly_rows, multipliers) with poly_rows[i] = multipliers[i] * rows[i]."""
    poly_rows, multipliers = [], []
    for row in rows:
        ctx = row[0].ctx
        lcm = None
        for f in row:
            if f.is_zero() or f.is_polynomial():
                continue
            d = f.den.poly
            if lcm is None:
                lcm = d
            else:
                g = lcm.gcd(d)
                lcm = lcm * (d / g)
        if lcm is None:
            poly_rows.append([f.num for f in row])
            multipliers.append(LaurentPoly.constant(ctx, 1))
            continue
        mult = LaurentPoly(ctx, lcm)
        out = []
        for f in row:
            if f.is_zero():
                out.append(f.num)
            else:
                out.append(f.num * LaurentPoly(ctx, lcm / f.den.poly))
        poly_rows.append(out)
        multipliers.append(mult)
    return poly_rows, multipliers


def bareiss_echelon(rows: Sequence[Sequence[LaurentPoly]]):
    """Fraction-free row echelon form.

    Returns (U, pivots, sign) where ``pivots`` lists pivot columns and ``sign``
    is the parity of the row swaps.  For a square nonsingular input the last
    pivot of U equals the determinant times ``sign``.
    """
    A = [list(r) for r in rows]
    if not A:
        return A, [], 1
    nrows, ncols = len(A), len(A[0])
    ctx = A[0][0].ctx
    prev = LaurentPoly.constant(ctx, 1)
    zero = LaurentPoly.zero(ctx)
    pivots: list[int] = []
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        if p != r:
            A[p], A[r] = A[r], A[p]
            sign = -sign
        piv = A[r][c]
        prow = A[r]
        for i in range(r + 1, nrows):
            row = A[i]
            lead = row[c]
            if lead.is_zero():
                for j in range(c + 1, ncols):
                    if not row[j].is_zero():
                        row[j] = (piv * row[j]).exquo(prev)
            else:
                for j in range(c + 1, ncols):
                    v = piv * row[j]
                    if not prow[j].is_zero():
                        v = v - lead * prow[j]
                    row[j] = v.exquo(prev) if not v.is_zero() else zero
            row[c] = zero
        prev = piv
        pivots.append(c)
        r += 1
    return A, pivots, sign


def bareiss_det(rows: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(rows)
    if n == 0:
        raise ValueError("determinant of an empty matrix")
    ctx = rows[0][0].ctx
    U, pivots, sign = bareiss_echelon(rows)
    if len(pivots) < n:
        return LaurentPoly.zero(ctx)
    det = U[n - 1][n - 1]
    return -det if sign < 0 else det


def fraction_det(rows: Sequence[Sequence[CentralFraction]]) -> CentralFraction:
    poly_rows, multipliers = clear_denominators(rows)
    det = CentralFraction(bareiss_det(poly_rows))
    scale = multipliers[0]
    for m in multipliers[1:]:
        scale = scale * m
    return det / CentralFraction(scale)


def rank(rows: Sequence[Sequence[CentralFraction]]) -> int:
    poly_rows, _ = clear_denominators(rows)
    _, pivots, _ = bareiss_echelon(poly_rows)
    return len(pivots)


def _back_substitute(U, pivots, ncols, rhs_col=None, free=None):
    """Solve the echelon system for pivot unknowns over the fraction field."""
    ctx = U[0][0].ctx
    x = [CentralFraction.zero(ctx) for _ in range(ncols)]
    if free is not None:
        x[free] = CentralFraction.one(ctx)
    for r in reversed(range(len(pivots))):
        c = pivots[r]
        row = U[r]
        acc = CentralFraction(row[rhs_col]) if rhs_col is not None else CentralFraction.zero(ctx)
        for j in range(c + 1, ncols):
            if not x[j].is_zero() and not row[j].is_zero():
                acc = acc - CentralFraction(row[j]) * x[j]
        x[c] = acc / CentralFraction(row[c])
    return x


def solve(rows: Sequence[Sequence[CentralFraction]], rhs: Sequence[CentralFraction]):
    """Solve M x = rhs for square nonsingular M; raises ArithmeticError if singular."""
    n = len(rows)
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    poly_rows, _ = clear_denominators(augmented)
    U, pivots, _ = bareiss_echelon(poly_rows)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise ArithmeticError("singular linear system")
    return _back_substitute(U, pivots, n, rhs_col=n)


def nullspace(rows: Sequence[Sequence[CentralFraction]]) -> list[list[CentralFraction]]:
    """Basis of {v : M v = 0} over the central fraction field."""
    ncols = len(rows[0])
    poly_rows, _ = clear_denominators(rows)
    U, pivots, _ = bareiss_echelon(poly_rows)
    U = U[: len(pivots)]
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        if not U:
            ctx = rows[0][0].ctx
            v = [CentralFraction.zero(ctx) for _ in range(ncols)]
            v[f] = CentralFraction.one(ctx)
            basis.append(v)
            continue
        # pivot unknowns beyond f stay zero; free unknowns other than f are zero
        x = _back_substitute(U, pivots, ncols, free=f)
        basis.append(x)
    return basis
