"""Exact tools for supports of spherical modules over rational Cherednik algebras.

Reflection groups and their strata, cyclotomic arithmetic, Schur elements,
Dunkl operators and W-exponentials, and the two support decision routes.
"""

from .cyclo import CycloNum, LaurentPoly, factor_cyclotomic
from .groups import ReflectionGroup, build_from_spec, strata
from .hecke import SchurElement, principal_schur, q_index
from .support import ParamPoint, finite_dimensional, support_via_exponential, support_via_schur

__version__ = "0.1.0"

__all__ = [
    "CycloNum",
    "LaurentPoly",
    "ParamPoint",
    "ReflectionGroup",
    "SchurElement",
    "build_from_spec",
    "factor_cyclotomic",
    "finite_dimensional",
    "principal_schur",
    "q_index",
    "strata",
    "support_via_exponential",
    "support_via_schur",
]
