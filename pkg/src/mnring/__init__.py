"""Exact arithmetic in a twisted Malcev-Neumann division ring and its subrings.

Modules:

- ``numfield``: the multiquadratic field Q(sqrt p_1, ..., sqrt p_m) and its automorphisms
- ``grp``: the free abelian group on x_1, x_2, ... with lexicographic order
- ``series``: twisted formal sums and truncated inversion
- ``crossed``: the exact finite-level crossed-product model
- ``laurent``, ``radpoly``, ``linalg``: central Laurent fractions, polynomials
  over the radical field, and exact linear algebra behind ``crossed``
- ``verify``: executable property checks
- ``cli``: command-line front end
"""

from .crossed import CrossedElement, CrossedModel
from .grp import GroupElement
from .laurent import CentralFraction, LaurentPoly
from .numfield import FieldElement, PrimeBasis
from .series import SeriesElement, TruncatedSeries

__all__ = [
    "CentralFraction",
    "CrossedElement",
    "CrossedModel",
    "FieldElement",
    "GroupElement",
    "LaurentPoly",
    "PrimeBasis",
    "SeriesElement",
    "TruncatedSeries",
]
