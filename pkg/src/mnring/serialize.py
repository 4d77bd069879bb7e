"""Structured (JSON) records for elements and scalar results.

Rationals are written as decimal strings so that integer width never matters.
Records are emitted with sorted keys and fixed separators, so the same value
always serializes to the same bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .crossed import CrossedElement, CrossedModel
from .grp import GroupElement, format_group
from .laurent import CentralFraction, LaurentPoly
from .numfield import FieldElement, PrimeBasis, mask_to_vector, vector_to_mask
from .series import SeriesElement, TruncatedSeries


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _rational(c: Fraction) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}


def _read_rational(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def laurent_record(p: LaurentPoly) -> list[dict]:
    return [
        {"exponents": list(e), **_rational(c)}
        for e, c in sorted(p.terms().items())
    ]


def read_laurent(ctx, terms: list[dict]) -> LaurentPoly:
    return LaurentPoly.from_terms(ctx, {tuple(t["exponents"]): _read_rational(t) for t in terms})


def fraction_record(f: CentralFraction) -> dict:
    return {"numerator": laurent_record(f.num), "denominator": laurent_record(f.den)}


def read_fraction(ctx, d: dict) -> CentralFraction:
    return CentralFraction(read_laurent(ctx, d["numerator"]), read_laurent(ctx, d["denominator"]))


def field_record(a: FieldElement) -> list[dict]:
    m = a.level
    return [
        {"epsilon": list(mask_to_vector(e, m)), **_rational(c)}
        for e, c in sorted(a.terms.items())
    ]


def read_field(basis: PrimeBasis, terms: list[dict]) -> FieldElement:
    return FieldElement(basis, {vector_to_mask(t["epsilon"]): _read_rational(t) for t in terms})


def header(mode: str, level: int, primes: PrimeBasis) -> dict:
    return {"mode": mode, "level": level, "primes": list(primes.primes)}


def crossed_record(a: CrossedElement, mode: str | None = None) -> dict:
    model = a.model
    m = model.level
    mode = mode or ("crossed-R" if model.with_s else "crossed-L")
    rec = header(mode, m, model.basis)
    rec["terms"] = [
        {
            "epsilon": list(mask_to_vector(e, m)),
            "mu": list(mask_to_vector(u, m)),
            "coefficient": fraction_record(c),
        }
        for (e, u), c in a.items()
    ]
    return rec


def read_crossed(rec: dict) -> CrossedElement:
    model = CrossedModel(PrimeBasis(tuple(rec["primes"])), with_s=rec["mode"] == "crossed-R")
    terms = {}
    for t in rec["terms"]:
        key = (vector_to_mask(t["epsilon"]), vector_to_mask(t["mu"]))
        terms[key] = read_fraction(model.ctx, t["coefficient"])
    return CrossedElement(model, terms)


def series_record(s: SeriesElement | TruncatedSeries, level: int | None = None) -> dict:
    frontier = None
    if isinstance(s, TruncatedSeries):
        frontier = s.exact_below
        s = s.body
    basis = s.basis
    rec = header("series", basis.level if level is None else level, basis)
    rec["terms"] = [
        {"group": [[i, n] for i, n in g.exponents], "coefficient": field_record(c)}
        for g, c in s.items()
    ]
    rec["exact_below"] = None if frontier is None else format_group(frontier)
    return rec


def read_series(rec: dict) -> SeriesElement:
    basis = PrimeBasis(tuple(rec["primes"]))
    terms = {}
    for t in rec["terms"]:
        g = GroupElement([tuple(p) for p in t["group"]])
        terms[g] = read_field(basis, t["coefficient"])
    return SeriesElement(basis, terms)


def element_record(value: Any) -> dict:
    if isinstance(value, CrossedElement):
        return crossed_record(value)
    if isinstance(value, (SeriesElement, TruncatedSeries)):
        return series_record(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")
