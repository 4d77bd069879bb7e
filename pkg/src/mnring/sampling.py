"""Seeded random elements for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .crossed import CrossedElement, CrossedModel
from .grp import GroupElement
from .laurent import CentralFraction, LaurentPoly
from .numfield import FieldElement, PrimeBasis
from .series import SeriesElement


def rational(rng: random.Random, bound: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def field_element(
    rng: random.Random, basis: PrimeBasis, max_terms: int = 3, force_radical: bool = False
) -> FieldElement:
    n = 1 << basis.level
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.randrange(n)] = rational(rng, nonzero=True)
    if force_radical and n > 1:
        terms[rng.randrange(1, n)] = rational(rng, nonzero=True)
    return FieldElement(basis, terms)


def nonzero_field_element(rng: random.Random, basis: PrimeBasis, max_terms: int = 3) -> FieldElement:
    while True:
        a = field_element(rng, basis, max_terms)
        if a:
            return a


def group_element(rng: random.Random, max_index: int, bound: int = 2) -> GroupElement:
    return GroupElement({i: rng.randint(-bound, bound) for i in range(1, max_index + 1)})


def series_element(
    rng: random.Random,
    basis: PrimeBasis,
    max_terms: int = 5,
    max_index: int | None = None,
    bound: int = 2,
    coeff_terms: int = 2,
) -> SeriesElement:
    max_index = basis.level if max_index is None else max_index
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[group_element(rng, max_index, bound)] = nonzero_field_element(rng, basis, coeff_terms)
    return SeriesElement(basis, terms)


def nonzero_series(rng: random.Random, basis: PrimeBasis, **kw) -> SeriesElement:
    while True:
        s = series_element(rng, basis, **kw)
        if not s.is_zero():
            return s


def laurent_poly(rng: random.Random, ctx, max_terms: int = 2, bound: int = 1) -> LaurentPoly:
    n = ctx.nvars()
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[tuple(rng.randint(-bound, bound) for _ in range(n))] = rational(rng, nonzero=True)
    return LaurentPoly.from_terms(ctx, terms)


def crossed_element(
    rng: random.Random,
    model: CrossedModel,
    max_terms: int = 3,
    coeff_terms: int = 1,
    bound: int = 1,
) -> CrossedElement:
    """Random normal form with Laurent-polynomial coefficients."""
    n = 1 << model.level
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (rng.randrange(n), rng.randrange(n))
        terms[key] = CentralFraction(laurent_poly(rng, model.ctx, coeff_terms, bound))
    return CrossedElement(model, terms)


def nonzero_crossed(rng: random.Random, model: CrossedModel, **kw) -> CrossedElement:
    while True:
        a = crossed_element(rng, model, **kw)
        if not a.is_zero():
            return a


def crossed_monomial(rng: random.Random, model: CrossedModel, bound: int = 1) -> CrossedElement:
    """c * r^eps * x^mu with c a nonzero rational times a central monomial."""
    n = 1 << model.level
    key = (rng.randrange(n), rng.randrange(n))
    exps = tuple(rng.randint(-bound, bound) for _ in range(model.nvars))
    return CrossedElement(
        model, {key: LaurentPoly.monomial(model.ctx, exps, rational(rng, nonzero=True))}
    )
