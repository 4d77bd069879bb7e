from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mnring.crossed import CrossedElement, CrossedModel
from mnring.grp import GroupElement
from mnring.laurent import CentralFraction, LaurentPoly
from mnring.numfield import FieldElement, PrimeBasis
from mnring.series import SeriesElement

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


BASES = {m: PrimeBasis.first(m) for m in range(0, 5)}
MODELS = {m: CrossedModel.first(m) for m in range(1, 4)}

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)
nonzero_rationals = rationals.filter(bool)


def field_elements(m: int, max_terms: int = 4):
    basis = BASES[m]
    return st.dictionaries(
        st.integers(0, (1 << m) - 1), rationals, max_size=max_terms
    ).map(lambda d: FieldElement(basis, d))


def nonzero_field_elements(m: int, max_terms: int = 4):
    return field_elements(m, max_terms).filter(lambda a: not a.is_zero())


def group_elements(max_index: int = 3, bound: int = 3):
    return st.dictionaries(
        st.integers(1, max_index), st.integers(-bound, bound), max_size=max_index
    ).map(GroupElement)


def series_elements(m: int, max_terms: int = 5, max_index: int | None = None, bound: int = 2):
    basis = BASES[m]
    idx = m if max_index is None else max_index
    return st.dictionaries(
        group_elements(max(idx, 1), bound), field_elements(m, 2), max_size=max_terms
    ).map(lambda d: SeriesElement(basis, d))


def laurent_polys(model: CrossedModel, max_terms: int = 2, bound: int = 2):
    n = model.nvars
    return st.dictionaries(
        st.tuples(*[st.integers(-bound, bound)] * n), nonzero_rationals, min_size=1, max_size=max_terms
    ).map(lambda d: LaurentPoly.from_terms(model.ctx, d))


def crossed_elements(model: CrossedModel, max_terms: int = 3, bound: int = 2):
    n = 1 << model.level
    keys = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    return st.dictionaries(keys, laurent_polys(model, 2, bound), max_size=max_terms).map(
        lambda d: CrossedElement(model, {k: CentralFraction(v) for k, v in d.items()})
    )


def nonzero_crossed(model: CrossedModel, **kw):
    return crossed_elements(model, **kw).filter(lambda a: not a.is_zero())


def q(x) -> Fraction:
    return Fraction(x)
