"""Exact computations with graded artinian rings: Groebner bases, Koszul homology,
quasi-complete-intersection certificates, exact zero-divisors and resolutions."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import QciError
from .fields import GF, QQ
from .polynomials import GREVLEX, LEX, PolyRing, Polynomial
from .quotient import GradedQuotientRing, build_quotient_from_text

__all__ = [
    "GF",
    "GREVLEX",
    "GradedQuotientRing",
    "LEX",
    "PolyRing",
    "Polynomial",
    "QQ",
    "QciError",
    "__version__",
    "build_quotient_from_text",
]
