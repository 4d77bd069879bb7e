import random

import pytest

from mnring import linalg, sampling
from mnring.crossed import CrossedModel, _right_space_matrix, _scaled_terms
from mnring.laurent import CentralFraction, LaurentPoly
from mnring.numfield import FieldElement, PrimeBasis, field_norm
from mnring.radpoly import rp_bareiss_det, rp_mul, rp_norm, rp_solve

MODEL = CrossedModel.first(2)
BASIS = MODEL.basis
CTX = MODEL.ctx


def const(q):
    return LaurentPoly.constant(CTX, q)


def lift(elem: FieldElement):
    return {e: const(c) for e, c in elem.terms.items()}


def rand_radpoly(rng, dense=True):
    out = {}
    for e in range(1 << BASIS.level):
        if dense or rng.random() < 0.5:
            v = sampling.laurent_poly(rng, CTX, max_terms=2, bound=1)
            if not v.is_zero():
                out[e] = v
    return out


def test_norm_matches_field_norm():
    rng = random.Random(1)
    for _ in range(20):
        a = sampling.nonzero_field_element(rng, BASIS)
        assert rp_norm(lift(a), BASIS) == const(field_norm(a))


def test_norm_of_zero():
    with pytest.raises(ZeroDivisionError):
        rp_norm({}, BASIS)


def test_radical_product():
    r1 = {1: const(1)}
    assert rp_mul(r1, r1, BASIS) == {0: const(2)}


def _fraction_matrix(M):
    """Expand a K(t) matrix to the Q(t) matrix of the same linear map."""
    n, k = len(M), 1 << BASIS.level
    out = [[CentralFraction.zero(CTX)] * (n * k) for _ in range(n * k)]
    for i in range(n):
        for j in range(n):
            for f in range(k):
                col = rp_mul(M[i][j], {f: const(1)}, BASIS)
                for e, c in col.items():
                    out[i * k + e][j * k + f] = CentralFraction(c)
    return out


def test_det_norm_matches_expanded_determinant():
    rng = random.Random(2)
    for n in (1, 2, 3):
        M = [[rand_radpoly(rng, dense=False) for _ in range(n)] for _ in range(n)]
        det = rp_bareiss_det(M, BASIS)
        expanded = linalg.fraction_det(_fraction_matrix(M))
        if not det:
            assert expanded.is_zero()
        else:
            assert CentralFraction(rp_norm(det, BASIS)) == expanded


def test_singular_matrix():
    row = [{0: const(1)}, {1: const(1)}]
    M = [row, [dict(row[0]), dict(row[1])]]
    assert rp_bareiss_det(M, BASIS) == {}
    with pytest.raises(ArithmeticError):
        rp_solve(M, [{0: const(1)}, {}], BASIS)


def test_solve_is_exact():
    rng = random.Random(3)
    for _ in range(5):
        a = sampling.nonzero_crossed(rng, MODEL, max_terms=4)
        _, scaled = _scaled_terms(a)
        M = _right_space_matrix(scaled, MODEL)
        rhs = [rand_radpoly(rng) for _ in M]
        y, d = rp_solve(M, rhs, BASIS)
        for i, row in enumerate(M):
            acc = {}
            for j, entry in enumerate(row):
                for e, c in rp_mul(entry, y[j], BASIS).items():
                    acc[e] = acc[e] + c if e in acc else c
            acc = {e: c for e, c in acc.items() if not c.is_zero()}
            assert acc == rp_mul(d, rhs[i], BASIS)


def test_prime_basis_other_primes():
    basis = PrimeBasis((3, 7))
    r2 = {2: const(1)}
    assert rp_mul(r2, r2, basis) == {0: const(7)}
